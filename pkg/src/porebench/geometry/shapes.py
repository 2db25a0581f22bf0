"""Unit cells with one centered solid inclusion."""

from __future__ import annotations

import math

import numpy as np

from porebench.exceptions import InvalidSpecError, ShapeTooLargeError
from porebench.geometry.base import BaseGenerator
from porebench.geometry.image import GeneratorKind, GeneratorSpec, PoreImage

# Outward edge normals of an upward-pointing equilateral triangle.
_TRIANGLE_NORMALS = np.deg2rad([270.0, 30.0, 150.0])


def _shape_frame(width: int, height: int, rotation: float) -> tuple[np.ndarray, np.ndarray]:
    """Pixel-center coordinates relative to the cell center, rotated into the shape frame.

    x grows to the right and y grows upward.
    """
    x = np.arange(width) + 0.5 - width / 2.0
    y = -(np.arange(height) + 0.5 - height / 2.0)
    xx, yy = np.meshgrid(x, y)
    theta = math.radians(rotation)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    return cos_t * xx + sin_t * yy, -sin_t * xx + cos_t * yy


def inclusion_mask(spec: GeneratorSpec, width: int, height: int) -> np.ndarray:
    """Boolean mask of pixels whose center lies strictly inside the shape."""
    for name in ("radius", "half_width", "half_height"):
        if getattr(spec, name) < 0:
            raise InvalidSpecError(f"{name} must be non-negative")

    u, v = _shape_frame(width, height, spec.rotation)
    au, av = np.abs(u), np.abs(v)
    kind = spec.kind

    if kind is GeneratorKind.SQUARE:
        return np.maximum(au, av) < spec.half_width
    if kind is GeneratorKind.RECTANGLE:
        return (au < spec.half_width) & (av < spec.half_height)
    if kind is GeneratorKind.CIRCLE:
        return u * u + v * v < spec.radius * spec.radius
    if kind is GeneratorKind.ELLIPSE:
        if spec.half_width == 0 or spec.half_height == 0:
            return np.zeros((height, width), dtype=bool)
        return (u / spec.half_width) ** 2 + (v / spec.half_height) ** 2 < 1.0
    if kind is GeneratorKind.TRIANGLE:
        inradius = spec.radius / 2.0
        inside = np.ones((height, width), dtype=bool)
        for angle in _TRIANGLE_NORMALS:
            inside &= u * math.cos(angle) + v * math.sin(angle) < inradius
        return inside
    if kind is GeneratorKind.CROSS:
        arm, thickness = spec.half_width, spec.half_height
        return ((au < arm) & (av < thickness)) | ((au < thickness) & (av < arm))
    raise InvalidSpecError(f"'{kind.value}' is not a simple shape")


def generate_shape(spec: GeneratorSpec, width: int, height: int) -> PoreImage:
    """One centered solid inclusion; every boundary pixel stays void."""
    solid = inclusion_mask(spec, width, height)
    border = np.zeros_like(solid)
    border[[0, -1], :] = True
    border[:, [0, -1]] = True
    if np.any(solid & border):
        raise ShapeTooLargeError(
            f"{spec.kind.value} inclusion touches the boundary of a {width}x{height} cell"
        )
    return PoreImage(~solid)


class ShapeGenerator(BaseGenerator):
    """Simple inclusion generator for one shape kind."""

    def __init__(self, kind: GeneratorKind) -> None:
        if not kind.is_shape:
            raise InvalidSpecError(f"'{kind.value}' is not a simple shape")
        self.name = kind.value
        self.description = f"Single centered solid {kind.value} inclusion"

    def _build(self, spec: GeneratorSpec, width: int, height: int) -> PoreImage:
        return generate_shape(spec, width, height)
