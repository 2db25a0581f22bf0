"""Porosity and watershed pore-size distribution."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from skimage.feature import peak_local_max
from skimage.segmentation import watershed

from porebench.exceptions import NoVoidSpaceError
from porebench.geometry.image import PoreImage
from porebench.preprocess import label_components

logger = logging.getLogger(__name__)


def porosity(image: PoreImage) -> float:
    """Void pixels over total pixels."""
    return image.void_count / image.total_count


@dataclass(frozen=True, slots=True, eq=False)
class PoreSizeDistribution:
    """Watershed segmentation result; volumes are pixel counts per pore."""

    n_pores: int
    volumes: np.ndarray
    mean: float
    std: float
    labels: np.ndarray
    peaks: np.ndarray


def _tile_reps(image: PoreImage) -> tuple[int, int]:
    return (3 if image.periodic_y else 1, 3 if image.periodic_x else 1)


def _center(tiled: np.ndarray, image: PoreImage) -> np.ndarray:
    row = image.height if image.periodic_y else 0
    col = image.width if image.periodic_x else 0
    return tiled[row : row + image.height, col : col + image.width]


def distance_map(image: PoreImage) -> np.ndarray:
    """Euclidean distance (pixels) from each void pixel to the nearest solid pixel.

    Periodic axes use the distance on the torus. Solid pixels are 0; a cell
    without solid is infinite everywhere.
    """
    cells = image.cells
    if cells.all():
        return np.full(cells.shape, np.inf)
    tiled = np.tile(cells, _tile_reps(image))
    return _center(ndimage.distance_transform_edt(tiled), image)


def _pad(array: np.ndarray, image: PoreImage, fill: float | bool) -> np.ndarray:
    """One-pixel border: wrapped on periodic axes, ``fill`` elsewhere."""
    for axis, periodic in ((0, image.periodic_y), (1, image.periodic_x)):
        widths = [(0, 0), (0, 0)]
        widths[axis] = (1, 1)
        if periodic:
            array = np.pad(array, widths, mode="wrap")
        else:
            array = np.pad(array, widths, mode="constant", constant_values=fill)
    return array


def _plateau_labels(image: PoreImage, mask: np.ndarray) -> np.ndarray:
    """Label 8-connected runs of ``mask``, joined across periodic edges."""
    height, width = mask.shape
    index = np.arange(height * width).reshape(height, width)
    sources: list[np.ndarray] = []
    targets: list[np.ndarray] = []
    for dy, dx in ((0, 1), (1, 0), (1, 1), (1, -1)):
        shift = (-dy, -dx)
        linked = mask & np.roll(mask, shift, axis=(0, 1))
        if dy and not image.periodic_y:
            linked[-1, :] = False
        if dx > 0 and not image.periodic_x:
            linked[:, -1] = False
        if dx < 0 and not image.periodic_x:
            linked[:, 0] = False
        sources.append(index[linked])
        targets.append(np.roll(index, shift, axis=(0, 1))[linked])
    rows = np.concatenate(sources)
    cols = np.concatenate(targets)
    graph = coo_matrix((np.ones(rows.size), (rows, cols)), shape=(index.size, index.size))
    _, labels = connected_components(graph, directed=False)
    return labels.reshape(height, width)


def _one_per_plateau(
    image: PoreImage, candidates: np.ndarray, smoothed: np.ndarray, dist: np.ndarray
) -> np.ndarray:
    """Collapse candidates sharing a flat maximum to the one with the largest distance."""
    masked = np.where(image.cells, smoothed, 0.0)
    padded = _pad(masked, image, 0.0)
    # box smoothing leaves rounding noise on flat runs
    crest = ndimage.maximum_filter(padded, size=3)[1:-1, 1:-1]
    plateau = (masked > 0) & (masked >= crest - 1e-9)
    labels = _plateau_labels(image, plateau)

    best: dict[int, tuple[int, int]] = {}
    for row, col in sorted(map(tuple, candidates.tolist())):
        key = int(labels[row, col]) if plateau[row, col] else -(row * image.width + col) - 1
        current = best.get(key)
        if current is None or dist[row, col] > dist[current]:
            best[key] = (row, col)
    return np.array(sorted(best.values()), dtype=np.int64).reshape(-1, 2)


def find_peaks(image: PoreImage, dist: np.ndarray, smoothing_radius: int = 2) -> np.ndarray:
    """Local maxima of the box-smoothed distance map, merged SNOW style.

    Candidates on one flat maximum collapse to a single peak first. A peak is
    dropped when it lies within a kept peak's distance value of that
    (larger or equal) kept peak. Every void component keeps at least one peak.
    """
    modes = [
        "wrap" if image.periodic_y else "nearest",
        "wrap" if image.periodic_x else "nearest",
    ]
    smoothed = dist
    if smoothing_radius > 0:
        smoothed = ndimage.uniform_filter(dist, size=2 * smoothing_radius + 1, mode=modes)

    padded = _pad(smoothed, image, 0.0)
    padded_void = _pad(image.cells, image, False)
    found = peak_local_max(
        padded,
        min_distance=1,
        threshold_abs=0.0,
        labels=padded_void.astype(np.int32),
        exclude_border=False,
    )
    found = found - 1
    inside = (
        (found[:, 0] >= 0)
        & (found[:, 0] < image.height)
        & (found[:, 1] >= 0)
        & (found[:, 1] < image.width)
    )
    candidates = _one_per_plateau(image, found[inside], smoothed, dist)

    heights = dist[candidates[:, 0], candidates[:, 1]]
    order = np.lexsort((candidates[:, 1], candidates[:, 0], -heights))
    kept: list[tuple[int, int]] = []
    for row, col in candidates[order]:
        if not any(
            _periodic_distance(image, (row, col), peak) <= dist[peak] for peak in kept
        ):
            kept.append((int(row), int(col)))

    labeling = label_components(image)
    covered = {int(labeling.labels[peak]) for peak in kept}
    for component in range(1, labeling.count + 1):
        if component in covered:
            continue
        masked = np.where(labeling.labels == component, dist, -1.0)
        row, col = np.unravel_index(int(np.argmax(masked)), masked.shape)
        kept.append((int(row), int(col)))
    return np.array(kept, dtype=np.int64).reshape(-1, 2)


def _periodic_distance(image: PoreImage, a: tuple[int, int], b: tuple[int, int]) -> float:
    dy = abs(int(a[0]) - int(b[0]))
    dx = abs(int(a[1]) - int(b[1]))
    if image.periodic_y:
        dy = min(dy, image.height - dy)
    if image.periodic_x:
        dx = min(dx, image.width - dx)
    return float(np.hypot(dx, dy))


def pore_size_distribution(image: PoreImage, smoothing_radius: int = 2) -> PoreSizeDistribution:
    """Segment the void space into pores by marker watershed on the negated distance map."""
    if image.void_count == 0:
        raise NoVoidSpaceError("pore size distribution needs void pixels")

    dist = distance_map(image)
    if np.isinf(dist).all():
        labels = image.cells.astype(np.int64)
        volumes = np.array([image.void_count], dtype=np.int64)
        return PoreSizeDistribution(1, volumes, float(volumes[0]), 0.0, labels, np.zeros((0, 2), np.int64))

    peaks = find_peaks(image, dist, smoothing_radius)
    markers = np.zeros(image.cells.shape, dtype=np.int64)
    markers[peaks[:, 0], peaks[:, 1]] = np.arange(1, len(peaks) + 1)

    reps = _tile_reps(image)
    tiled_labels = watershed(
        -np.tile(dist, reps),
        markers=np.tile(markers, reps),
        mask=np.tile(image.cells, reps),
    )
    labels = np.where(image.cells, _center(tiled_labels, image), 0).astype(np.int64)

    volumes = np.bincount(labels.ravel(), minlength=len(peaks) + 1)[1:]
    volumes = volumes[volumes > 0]
    logger.debug("Segmented %d pores from %d peaks", len(volumes), len(peaks))
    return PoreSizeDistribution(
        n_pores=int(len(volumes)),
        volumes=volumes,
        mean=float(volumes.mean()),
        std=float(volumes.std()),
        labels=labels,
        peaks=peaks,
    )
