"""Full, sub-region and convolutional volume averaging.

Averages are intrinsic: window sums over void pixels divided by the number of
void pixels in the window. The superficial variant multiplies by the window
porosity.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Literal

import numpy as np

from porebench.averaging.field import ScalarField, require_shared_mask
from porebench.exceptions import (
    EmptyWindowError,
    EvenFilterError,
    InvalidSchemeError,
    NonDividingSubgridError,
)

EmptyPolicy = Literal["raise", "nan"]


class AveragingKind(str, Enum):
    FULL = "full"
    SUB = "sub"
    CONVOLUTIONAL = "convolutional"


@dataclass(frozen=True, slots=True)
class AveragingScheme:
    kind: AveragingKind = AveragingKind.FULL
    sub_nx: int = 1
    sub_ny: int = 1
    filter_w: int = 1
    filter_h: int = 1
    superficial: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", AveragingKind(self.kind))

    def validate(self, width: int, height: int) -> None:
        if self.kind is AveragingKind.SUB:
            if self.sub_nx < 1 or self.sub_ny < 1:
                raise InvalidSchemeError("sub-region counts must be positive")
            if width % self.sub_nx or height % self.sub_ny:
                raise NonDividingSubgridError(
                    f"{self.sub_nx}x{self.sub_ny} regions do not divide a {width}x{height} field"
                )
        elif self.kind is AveragingKind.CONVOLUTIONAL:
            if self.filter_w < 1 or self.filter_h < 1:
                raise InvalidSchemeError("filter extents must be positive")
            if self.filter_w % 2 == 0 or self.filter_h % 2 == 0:
                raise EvenFilterError(
                    f"filter {self.filter_w}x{self.filter_h} must have odd extents"
                )
            if self.filter_w > width or self.filter_h > height:
                raise InvalidSchemeError(
                    f"filter {self.filter_w}x{self.filter_h} exceeds the {width}x{height} field"
                )

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "sub_nx": self.sub_nx,
            "sub_ny": self.sub_ny,
            "filter_w": self.filter_w,
            "filter_h": self.filter_h,
            "superficial": self.superficial,
        }


@dataclass(frozen=True, slots=True, eq=False)
class Average:
    """Window averages shaped ``(1, 1)``, ``(sub_ny, sub_nx)`` or the field shape.

    Convolutional averages are NaN on solid pixels.
    """

    scheme: AveragingScheme
    values: np.ndarray
    field_shape: tuple[int, int]

    @property
    def scalar(self) -> float:
        if self.values.shape != (1, 1):
            raise ValueError(f"{self.scheme.kind.value} averages are not a single scalar")
        return float(self.values[0, 0])

    def expand(self) -> np.ndarray:
        """Piecewise-constant full-resolution view of the averages."""
        height, width = self.field_shape
        rows, cols = self.values.shape
        return np.repeat(np.repeat(self.values, height // rows, axis=0), width // cols, axis=1)

    def to_dict(self) -> dict[str, Any]:
        values = [[None if np.isnan(v) else float(v) for v in row] for row in self.values]
        return {"scheme": self.scheme.to_dict(), "values": values}


def _shift_sum(array: np.ndarray, radius: int, axis: int, wrap: bool) -> np.ndarray:
    """Sum of ``array`` shifted by ``-radius..radius`` along ``axis``."""
    total = np.zeros_like(array)
    for offset in range(-radius, radius + 1):
        if wrap:
            total += np.roll(array, offset, axis=axis)
            continue
        shifted = np.zeros_like(array)
        src = [slice(None)] * array.ndim
        dst = [slice(None)] * array.ndim
        if offset >= 0:
            src[axis] = slice(0, array.shape[axis] - offset)
            dst[axis] = slice(offset, None)
        else:
            src[axis] = slice(-offset, None)
            dst[axis] = slice(0, array.shape[axis] + offset)
        shifted[tuple(dst)] = array[tuple(src)]
        total += shifted
    return total


def _window_sums(
    field: ScalarField, scheme: AveragingScheme
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Value sums, void counts and pixel counts per window."""
    void = field.mask.cells
    weighted = np.where(void, field.values, 0.0)
    counts = void.astype(np.float64)
    height, width = void.shape

    if scheme.kind is AveragingKind.FULL:
        return (
            np.array([[weighted.sum()]]),
            np.array([[counts.sum()]]),
            np.array([[float(void.size)]]),
        )
    if scheme.kind is AveragingKind.SUB:
        shape = (scheme.sub_ny, height // scheme.sub_ny, scheme.sub_nx, width // scheme.sub_nx)
        block = float(shape[1] * shape[3])
        return (
            weighted.reshape(shape).sum(axis=(1, 3)),
            counts.reshape(shape).sum(axis=(1, 3)),
            np.full((scheme.sub_ny, scheme.sub_nx), block),
        )

    wrap_y, wrap_x = field.mask.periodic_y, field.mask.periodic_x
    ry, rx = scheme.filter_h // 2, scheme.filter_w // 2
    sums = _shift_sum(_shift_sum(weighted, rx, 1, wrap_x), ry, 0, wrap_y)
    voids = _shift_sum(_shift_sum(counts, rx, 1, wrap_x), ry, 0, wrap_y)
    area = _shift_sum(_shift_sum(np.ones_like(counts), rx, 1, wrap_x), ry, 0, wrap_y)
    return sums, voids, area


def average(
    field: ScalarField, scheme: AveragingScheme, on_empty: EmptyPolicy = "raise"
) -> Average:
    """Void-weighted window averages of ``field``.

    Windows without void pixels raise ``EmptyWindowError`` listing every such
    window, or become NaN with ``on_empty="nan"``. Convolutional placements
    centered on solid pixels are always NaN.
    """
    scheme.validate(field.width, field.height)
    sums, voids, area = _window_sums(field, scheme)

    relevant = np.ones(voids.shape, dtype=bool)
    if scheme.kind is AveragingKind.CONVOLUTIONAL:
        relevant = field.mask.cells
    empty = relevant & (voids == 0)
    if empty.any() and on_empty == "raise":
        windows = [tuple(index) for index in np.argwhere(empty)]
        raise EmptyWindowError(f"{len(windows)} averaging window(s) contain no void pixel", windows)

    with np.errstate(divide="ignore", invalid="ignore"):
        values = sums / voids
        if scheme.superficial:
            values = values * (voids / area)
    values = np.where(relevant & (voids > 0), values, np.nan)
    return Average(scheme=scheme, values=values, field_shape=field.values.shape)


def decompose(field: ScalarField, scheme: AveragingScheme) -> tuple[Average, ScalarField]:
    """Split ``field`` into its scheme average and the pointwise variation.

    The variation always subtracts the intrinsic average, so ``m = <m> + m~``
    holds on void pixels regardless of ``scheme.superficial``.
    """
    mean = average(field, replace(scheme, superficial=False))
    expanded = np.where(field.mask.cells, mean.expand(), 0.0)
    return mean, field.with_values(field.values - expanded)


def variation_product(
    a_var: ScalarField, b_var: ScalarField, scheme: AveragingScheme
) -> Average:
    """Scheme average of the pointwise product of two variation fields."""
    require_shared_mask(a_var, b_var)
    return average(a_var.with_values(a_var.values * b_var.values), scheme)
