"""Specific surface area and boundary directionality from pixel faces.

Each void pixel is classified by its solid 4-neighbors. Normals point from the
solid face into the void pixel, with y growing toward the top row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from porebench.exceptions import NoVoidSpaceError
from porebench.geometry.image import PoreImage
from porebench.metrics.options import DirectionalityNorm

DIRECTIONS = ("E", "NE", "N", "NW", "W", "SW", "S", "SE")
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, slots=True)
class SurfaceMetrics:
    specific_surface: float
    directionality: tuple[float, ...]
    directionality_std: float
    raw_surface: float
    boundary_pixels: int
    directional_pixels: int

    def as_dict(self) -> dict[str, float]:
        return dict(zip(DIRECTIONS, self.directionality, strict=True))


def _neighbor(solid: np.ndarray, dy: int, dx: int, wrap_y: bool, wrap_x: bool) -> np.ndarray:
    """``out[r, c] = solid[r + dy, c + dx]``; off-grid reads are False unless wrapped."""
    out = np.roll(solid, (-dy, -dx), axis=(0, 1))
    if dy and not wrap_y:
        out[-1 if dy > 0 else 0, :] = False
    if dx and not wrap_x:
        out[:, -1 if dx > 0 else 0] = False
    return out


def surface_metrics(
    image: PoreImage,
    norm: DirectionalityNorm = DirectionalityNorm.DIRECTIONAL,
) -> SurfaceMetrics:
    """Specific surface S, the 8-bin directionality Di and its spread."""
    if image.void_count == 0:
        raise NoVoidSpaceError("surface metrics need void pixels")
    void = image.cells
    solid = ~void
    wy, wx = image.periodic_y, image.periodic_x

    east = _neighbor(solid, 0, 1, wy, wx) & void
    west = _neighbor(solid, 0, -1, wy, wx) & void
    north = _neighbor(solid, -1, 0, wy, wx) & void
    south = _neighbor(solid, 1, 0, wy, wx) & void

    faces = east.astype(np.int64) + west + north + south
    normal_x = west.astype(np.int64) - east
    normal_y = south.astype(np.int64) - north
    opposite = (faces == 2) & ((east & west) | (north & south))

    single = int(np.count_nonzero(faces == 1))
    corner = int(np.count_nonzero((faces == 2) & ~opposite))
    slit = int(np.count_nonzero(opposite))
    concave = int(np.count_nonzero(faces == 3))
    isolated = int(np.count_nonzero(faces == 4))

    straight_units = single + 2 * slit + 4 * isolated
    diagonal_units = corner + concave
    raw = (straight_units + SQRT2 * diagonal_units) * image.pixel_length
    area = image.total_count * image.pixel_length**2

    boundary = faces > 0
    directional = boundary & ((normal_x != 0) | (normal_y != 0))
    angles = np.arctan2(normal_y[directional], normal_x[directional])
    bins = np.rint(angles / (np.pi / 4)).astype(np.int64) % 8
    counts = np.bincount(bins, minlength=8)

    n_boundary = int(np.count_nonzero(boundary))
    n_directional = int(np.count_nonzero(directional))
    denominator = n_directional if norm is DirectionalityNorm.DIRECTIONAL else n_boundary
    di = counts / denominator if denominator else np.zeros(8)

    return SurfaceMetrics(
        specific_surface=raw / area,
        directionality=tuple(float(value) for value in di),
        directionality_std=float(np.std(di)),
        raw_surface=raw,
        boundary_pixels=n_boundary,
        directional_pixels=n_directional,
    )
