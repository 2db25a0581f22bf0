"""Periodic Voronoi channel networks."""

from __future__ import annotations

import itertools

import numpy as np

from porebench.exceptions import DegenerateSeedsError, InvalidSpecError
from porebench.geometry.base import BaseGenerator
from porebench.geometry.image import GeneratorKind, GeneratorSpec, PoreImage

_CHUNK_ELEMENTS = 2_000_000


def seed_points(spec: GeneratorSpec, width: int, height: int) -> np.ndarray:
    """Seed coordinates ``(x, y)`` in pixel units, explicit or RNG placed."""
    if spec.points is not None:
        points = np.asarray(spec.points, dtype=float).reshape(-1, 2)
    else:
        rng = np.random.default_rng(spec.rng_seed)
        points = rng.uniform((0.0, 0.0), (float(width), float(height)), size=(spec.seeds, 2))
    if len(points) < 2:
        raise InvalidSpecError("voronoi geometries need at least two seeds")
    points = np.mod(points, (width, height))

    delta = np.abs(points[:, None, :] - points[None, :, :])
    delta = np.minimum(delta, np.array([width, height]) - delta)
    dist = np.hypot(delta[..., 0], delta[..., 1])
    np.fill_diagonal(dist, np.inf)
    if dist.min() < 1e-9:
        raise DegenerateSeedsError("two voronoi seeds coincide on the periodic cell")
    return points


def replicate_periodic(points: np.ndarray, width: int, height: int) -> np.ndarray:
    """Copy the seed set into the eight neighboring tiles."""
    shifts = [
        (dx * width, dy * height) for dx, dy in itertools.product((-1, 0, 1), repeat=2)
    ]
    return np.concatenate([points + np.array(shift, dtype=float) for shift in shifts])


def edge_distance(points: np.ndarray, width: int, height: int) -> np.ndarray:
    """Distance of every pixel center to the nearest Voronoi edge on the torus.

    Inside a convex cell the distance to its boundary is the smallest distance
    to any bisector with another seed.
    """
    seeds = replicate_periodic(points, width, height)
    xs = np.arange(width) + 0.5
    out = np.empty((height, width))
    chunk = max(1, _CHUNK_ELEMENTS // (width * len(seeds)))
    for start in range(0, height, chunk):
        rows = np.arange(start, min(start + chunk, height)) + 0.5
        gx, gy = np.meshgrid(xs, rows)
        pix = np.column_stack([gx.ravel(), gy.ravel()])
        d2 = ((pix[:, None, :] - seeds[None, :, :]) ** 2).sum(axis=-1)
        nearest = np.argmin(d2, axis=1)
        idx = np.arange(len(pix))
        own = seeds[nearest]
        separation = np.linalg.norm(seeds[None, :, :] - own[:, None, :], axis=-1)
        separation[idx, nearest] = 1.0
        bisector = (d2 - d2[idx, nearest][:, None]) / (2.0 * separation)
        bisector[idx, nearest] = np.inf
        out[start : start + len(rows)] = bisector.min(axis=1).reshape(len(rows), width)
    return out


def generate_voronoi(spec: GeneratorSpec, width: int, height: int) -> PoreImage:
    """Void channels of half-width ``aperture`` along the periodic Voronoi edges."""
    if spec.aperture < 1:
        raise InvalidSpecError("voronoi aperture must be at least one pixel")
    points = seed_points(spec, width, height)
    return PoreImage(edge_distance(points, width, height) <= spec.aperture)


class VoronoiGenerator(BaseGenerator):
    """Periodic Voronoi polygon channel generator."""

    name = GeneratorKind.VORONOI.value
    description = "Channels along periodic Voronoi cell edges"

    def _build(self, spec: GeneratorSpec, width: int, height: int) -> PoreImage:
        return generate_voronoi(spec, width, height)
