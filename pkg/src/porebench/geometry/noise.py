"""Periodic gradient noise (Perlin and fractal) topographies.

Gradients live on a lattice of ``scale``-pixel cells that wraps around the
unit cell, so the noise field continues seamlessly across both boundaries.
"""

from __future__ import annotations

import numpy as np

from porebench.exceptions import InvalidSpecError, NonWrappingScaleError
from porebench.geometry.base import BaseGenerator
from porebench.geometry.image import GeneratorKind, GeneratorSpec, PoreImage


def _fade(t: np.ndarray) -> np.ndarray:
    """Perlin fade function: 6t^5 - 15t^4 + 10t^3."""
    return t * t * t * (t * (t * 6 - 15) + 10)


def _check_wrapping(scale: int, width: int, height: int) -> None:
    if scale < 1 or width % scale or height % scale:
        raise NonWrappingScaleError(
            f"noise scale {scale} must divide the cell dimensions {width}x{height}"
        )


def perlin_layer(width: int, height: int, scale: int, rng: np.random.Generator) -> np.ndarray:
    """One octave of lattice-gradient noise with a wrapping gradient lattice."""
    _check_wrapping(scale, width, height)
    ny, nx = height // scale, width // scale
    angles = rng.uniform(0.0, 2.0 * np.pi, size=(ny, nx))
    gx, gy = np.cos(angles), np.sin(angles)

    ys = np.arange(height) / scale
    xs = np.arange(width) / scale
    yi = np.floor(ys).astype(int)
    xi = np.floor(xs).astype(int)
    y0, x0 = np.meshgrid(yi % ny, xi % nx, indexing="ij")
    y1, x1 = np.meshgrid((yi + 1) % ny, (xi + 1) % nx, indexing="ij")
    fy, fx = np.meshgrid(ys - yi, xs - xi, indexing="ij")

    n00 = gx[y0, x0] * fx + gy[y0, x0] * fy
    n01 = gx[y0, x1] * (fx - 1) + gy[y0, x1] * fy
    n10 = gx[y1, x0] * fx + gy[y1, x0] * (fy - 1)
    n11 = gx[y1, x1] * (fx - 1) + gy[y1, x1] * (fy - 1)

    u, v = _fade(fx), _fade(fy)
    top = n00 + u * (n01 - n00)
    bottom = n10 + u * (n11 - n10)
    return top + v * (bottom - top)


def noise_field(spec: GeneratorSpec, width: int, height: int) -> np.ndarray:
    """Raw (unnormalized) noise field for a perlin or fractal spec."""
    if not spec.kind.is_noise:
        raise InvalidSpecError(f"'{spec.kind.value}' is not a noise generator")
    rng = np.random.default_rng(spec.rng_seed)
    _check_wrapping(spec.scale, width, height)

    if spec.kind is GeneratorKind.PERLIN:
        return perlin_layer(width, height, spec.scale, rng)

    if spec.octaves < 2:
        raise InvalidSpecError("fractal noise needs at least two octaves")
    finest = 2 ** (spec.octaves - 1)
    if spec.scale % finest:
        raise NonWrappingScaleError(
            f"scale {spec.scale} cannot be halved {spec.octaves - 1} times on whole pixels"
        )
    field = np.zeros((height, width))
    amplitude = 1.0
    for octave in range(spec.octaves):
        field += amplitude * perlin_layer(width, height, spec.scale >> octave, rng)
        amplitude *= spec.persistence
    return field


def normalize(field: np.ndarray) -> np.ndarray:
    """Rescale to [0, 1]; a flat field maps to zeros."""
    low, high = float(field.min()), float(field.max())
    if high <= low:
        return np.zeros_like(field)
    return (field - low) / (high - low)


def generate_noise(spec: GeneratorSpec, width: int, height: int) -> PoreImage:
    """Void where the normalized noise reaches ``spec.threshold``."""
    values = normalize(noise_field(spec, width, height))
    return PoreImage(values >= spec.threshold)


class NoiseGenerator(BaseGenerator):
    """Perlin or fractal noise topography generator."""

    def __init__(self, kind: GeneratorKind) -> None:
        if not kind.is_noise:
            raise InvalidSpecError(f"'{kind.value}' is not a noise generator")
        self.name = kind.value
        self.description = (
            "Thresholded periodic Perlin noise"
            if kind is GeneratorKind.PERLIN
            else "Thresholded periodic multi-octave fractal noise"
        )

    def _build(self, spec: GeneratorSpec, width: int, height: int) -> PoreImage:
        return generate_noise(spec, width, height)
