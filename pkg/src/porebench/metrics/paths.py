"""Geometric tortuosity from stair-wise shortest void paths.

Path length rule: a straight unit step costs 1, and two consecutive orthogonal
unit steps (an L) may be charged together as one diagonal of length sqrt(2).
The cheapest grouping of a path's steps is found exactly by running Dijkstra
over states ``(pixel, pending)``, where ``pending`` is the axis of a step
whose charge is still open.

Along a periodic axis each source pixel is paired with its own periodic
image one cell further on, so a straight channel spans exactly the cell
length. Along a non-periodic axis the source is paired with the pixel in the
same row on the opposite face and the two half pixels at the faces are added.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from porebench.exceptions import NoCrossingPathError
from porebench.geometry.image import PoreImage
from porebench.metrics.graph import grid_edges

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)

# Charges are split so every edge weight stays positive: opening a step costs
# 0.5, closing it alone another 0.5, closing it as part of an L costs the rest
# of sqrt(2).
_OPEN = 0.5
_CLOSE_SINGLE = 0.5
_CLOSE_PAIR = SQRT2 - _OPEN
_STATES = 3  # 0 = nothing pending, 1 = horizontal step pending, 2 = vertical step pending
_BATCH_ELEMENTS = 4_000_000


@dataclass(frozen=True, slots=True, eq=False)
class TortuosityResult:
    axis: str
    tau: float
    mean_length: float
    straight_length: float
    n_paths: int
    n_sources: int
    lengths: tuple[float, ...]
    path: np.ndarray


def _state_graph(cells: np.ndarray, wrap_off: bool) -> coo_matrix:
    """Directed state graph over a grid whose measured axis is columns."""
    width = cells.shape[1]
    flat_a, flat_b = grid_edges(cells, wrap_x=False, wrap_y=wrap_off)
    horizontal = (flat_a // width) == (flat_b // width)

    sources: list[np.ndarray] = []
    targets: list[np.ndarray] = []
    weights: list[np.ndarray] = []

    def add(u: np.ndarray, su: int | np.ndarray, v: np.ndarray, sv: int | np.ndarray, w: float) -> None:
        sources.append(u * _STATES + su)
        targets.append(v * _STATES + sv)
        weights.append(np.full(len(u), w))

    for u, v in ((flat_a, flat_b), (flat_b, flat_a)):
        step = np.where(horizontal, 1, 2)
        other = 3 - step
        add(u, 0, v, 0, 1.0)
        add(u, 0, v, step, _OPEN)
        add(u, other, v, 0, _CLOSE_PAIR)
        add(u, 1, v, step, _CLOSE_SINGLE + _OPEN)
        add(u, 2, v, step, _CLOSE_SINGLE + _OPEN)

    n_states = cells.size * _STATES
    return coo_matrix(
        (np.concatenate(weights), (np.concatenate(sources), np.concatenate(targets))),
        shape=(n_states, n_states),
    )


def _trace(predecessors: np.ndarray, start: int, end: int, width: int, period: int) -> np.ndarray:
    states = [end]
    while states[-1] != start and predecessors[states[-1]] >= 0:
        states.append(int(predecessors[states[-1]]))
    pixels: list[tuple[int, int]] = []
    for state in reversed(states):
        row, col = divmod(state // _STATES, width)
        pixel = (row, col % period)
        if not pixels or pixels[-1] != pixel:
            pixels.append(pixel)
    return np.array(pixels, dtype=np.int64).reshape(-1, 2)


def _select_sources(rows: np.ndarray, limit: int | None) -> np.ndarray:
    if limit is None or len(rows) <= limit:
        return rows
    picks = np.unique(np.linspace(0, len(rows) - 1, limit).round().astype(int))
    return rows[picks]


def _column_tortuosity(
    cells: np.ndarray,
    closed: bool,
    wrap_off: bool,
    pixel_length: float,
    axis: str,
    max_sources: int | None,
) -> TortuosityResult:
    height, period = cells.shape
    if closed:
        grid = np.concatenate([cells, cells[:, :1]], axis=1)
        target_col = period
        face_extra = 0.0
        rows = np.flatnonzero(cells[:, 0])
    else:
        grid = cells
        target_col = period - 1
        face_extra = 1.0
        rows = np.flatnonzero(cells[:, 0] & cells[:, -1])
    rows = _select_sources(rows, max_sources)
    if len(rows) == 0:
        raise NoCrossingPathError(f"no void pixel pairs on the faces of axis {axis}")

    width = grid.shape[1]
    graph = _state_graph(grid, wrap_off).tocsr()
    source_states = (rows * width) * _STATES
    target_pixels = rows * width + target_col

    batch = max(1, _BATCH_ELEMENTS // graph.shape[0])
    lengths: list[float] = []
    path = np.zeros((0, 2), dtype=np.int64)
    for start in range(0, len(rows), batch):
        chunk = slice(start, start + batch)
        dist, predecessors = dijkstra(
            graph, directed=True, indices=source_states[chunk], return_predecessors=True
        )
        for offset, target in enumerate(target_pixels[chunk]):
            finals = np.array(
                [
                    dist[offset, target * _STATES],
                    dist[offset, target * _STATES + 1] + _CLOSE_SINGLE,
                    dist[offset, target * _STATES + 2] + _CLOSE_SINGLE,
                ]
            )
            best = int(np.argmin(finals))
            if not np.isfinite(finals[best]):
                continue
            lengths.append((float(finals[best]) + face_extra) * pixel_length)
            if len(path) == 0:
                path = _trace(
                    predecessors[offset],
                    int(source_states[chunk][offset]),
                    int(target * _STATES + best),
                    width,
                    period,
                )

    if not lengths:
        raise NoCrossingPathError(f"no void path crosses the cell along axis {axis}")
    skipped = len(rows) - len(lengths)
    if skipped:
        logger.info("Axis %s: %d of %d sources have no crossing path", axis, skipped, len(rows))

    straight = period * pixel_length
    mean_length = math.fsum(lengths) / len(lengths)
    return TortuosityResult(
        axis=axis,
        tau=mean_length / straight,
        mean_length=mean_length,
        straight_length=straight,
        n_paths=len(lengths),
        n_sources=len(rows),
        lengths=tuple(lengths),
        path=path,
    )


def tortuosity_paths(
    image: PoreImage, axis: str = "x", max_sources: int | None = None
) -> TortuosityResult:
    """Tortuosity with the per-source lengths and one representative path."""
    if axis == "x":
        return _column_tortuosity(
            image.cells, image.periodic_x, image.periodic_y, image.pixel_length, "x", max_sources
        )
    if axis == "y":
        result = _column_tortuosity(
            image.cells.T, image.periodic_y, image.periodic_x, image.pixel_length, "y", max_sources
        )
        return TortuosityResult(
            axis="y",
            tau=result.tau,
            mean_length=result.mean_length,
            straight_length=result.straight_length,
            n_paths=result.n_paths,
            n_sources=result.n_sources,
            lengths=result.lengths,
            path=result.path[:, ::-1].copy(),
        )
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def tortuosity(image: PoreImage, axis: str = "x", max_sources: int | None = None) -> float:
    """Mean stair-wise shortest path length over the straight cell length."""
    return tortuosity_paths(image, axis, max_sources).tau
