from __future__ import annotations

import math

import numpy as np
import pytest

from porebench.exceptions import NoCrossingPathError
from porebench.geometry import PoreImage
from porebench.metrics import tortuosity, tortuosity_paths


def _staircase(size: int) -> PoreImage:
    cells = np.zeros((size, size), dtype=bool)
    for i in range(size):
        cells[i, i] = True
        cells[i, (i + 1) % size] = True
    return PoreImage(cells)


def _stair_cost(steps: list[int]) -> float:
    """Cheapest charge for a step sequence; perpendicular neighbors may pair up."""
    cost = [0.0] * (len(steps) + 1)
    for i in range(1, len(steps) + 1):
        cost[i] = cost[i - 1] + 1.0
        if i >= 2 and steps[i - 1] != steps[i - 2]:
            cost[i] = min(cost[i], cost[i - 2] + math.sqrt(2.0))
    return cost[-1]


def _oracle_tau(cells: np.ndarray, wrap_x: bool, wrap_y: bool) -> float | None:
    """Enumerate every simple path between paired faces of the x axis.

    A periodic x axis pairs each left-face pixel with its copy one cell further on.
    """
    height, period = cells.shape
    if wrap_x:
        cells = np.concatenate([cells, cells[:, :1]], axis=1)
        rows = [r for r in range(height) if cells[r, 0]]
        face_extra = 0.0
    else:
        rows = [r for r in range(height) if cells[r, 0] and cells[r, period - 1]]
        face_extra = 1.0
    width = cells.shape[1]

    def neighbors(r: int, c: int) -> list[tuple[int, int, int]]:
        out = []
        for dr, dc, kind in ((0, 1, 0), (0, -1, 0), (1, 0, 1), (-1, 0, 1)):
            nr, nc = r + dr, c + dc
            if not 0 <= nc < width:
                continue
            if not 0 <= nr < height:
                if not (wrap_y and height > 2):
                    continue
                nr %= height
            if cells[nr, nc]:
                out.append((nr, nc, kind))
        return out

    lengths = []
    for row in rows:
        best = math.inf
        target = (row, width - 1)
        stack = [((row, 0), [], {(row, 0)})]
        while stack:
            (r, c), steps, seen = stack.pop()
            if (r, c) == target:
                best = min(best, _stair_cost(steps))
                continue
            for nr, nc, kind in neighbors(r, c):
                if (nr, nc) not in seen:
                    stack.append(((nr, nc), [*steps, kind], seen | {(nr, nc)}))
        if math.isfinite(best):
            lengths.append(best + face_extra)
    if not lengths:
        return None
    return math.fsum(lengths) / len(lengths) / period


def test_straight_channel_is_one() -> None:
    cells = np.zeros((6, 6), dtype=bool)
    cells[2, :] = True
    assert tortuosity(PoreImage(cells), "x") == 1.0
    assert tortuosity(PoreImage(cells, periodic_x=False), "x") == 1.0
    with pytest.raises(NoCrossingPathError):
        tortuosity(PoreImage(cells), "y")


def test_open_cell_is_one() -> None:
    image = PoreImage.filled(12, 9)
    assert tortuosity(image, "x") == 1.0
    assert tortuosity(image, "y") == 1.0


def test_diagonal_staircase_is_sqrt_two() -> None:
    image = _staircase(8)
    assert tortuosity(image, "x") == pytest.approx(math.sqrt(2), abs=1e-12)
    assert tortuosity(image, "y") == pytest.approx(math.sqrt(2), abs=1e-12)


def test_pixel_length_cancels() -> None:
    image = _staircase(6)
    scaled = PoreImage(image.cells, pixel_length=0.25)
    result = tortuosity_paths(scaled, "x")
    assert result.tau == pytest.approx(tortuosity(image, "x"), abs=1e-12)
    assert result.straight_length == 1.5


def test_wall_blocks_crossing() -> None:
    cells = np.ones((5, 5), dtype=bool)
    cells[:, 2] = False
    with pytest.raises(NoCrossingPathError):
        tortuosity(PoreImage(cells), "x")
    assert tortuosity(PoreImage(cells), "y") == 1.0


def test_detour_around_an_obstacle() -> None:
    image = PoreImage.from_strings(
        ["....", ".##.", ".##.", "...."], periodic_x=False, periodic_y=False
    )
    result = tortuosity_paths(image, "x")
    assert result.n_sources == 4
    assert result.n_paths == 4
    # rows 1 and 2 must step around the block
    assert result.lengths[0] == 4.0
    assert result.lengths[1] > 4.0
    assert result.tau > 1.0


def test_sources_without_path_are_skipped() -> None:
    image = PoreImage.from_strings(
        ["....", "#..#", ".##.", "...."], periodic_x=False, periodic_y=False
    )
    result = tortuosity_paths(image, "x")
    assert result.n_sources == 3
    assert result.n_paths == 3
    isolated = PoreImage.from_strings(
        ["....", "####", ".##.", "####"], periodic_x=False, periodic_y=False
    )
    result = tortuosity_paths(isolated, "x")
    assert (result.n_sources, result.n_paths) == (2, 1)


def test_representative_path_connects_the_faces() -> None:
    image = PoreImage.from_strings(
        ["#####", "..#..", "#...#", "#####"], periodic_x=False, periodic_y=False
    )
    result = tortuosity_paths(image, "x")
    path = result.path
    assert tuple(path[0]) == (1, 0)
    assert tuple(path[-1]) == (1, 4)
    assert len(path) == 7
    assert all(image.cells[r, c] for r, c in path)
    steps = np.abs(np.diff(path, axis=0)).sum(axis=1)
    assert (steps == 1).all()


def test_source_subsampling() -> None:
    result = tortuosity_paths(PoreImage.filled(10, 10), "x", max_sources=3)
    assert result.n_sources == 3
    assert result.tau == 1.0


@pytest.mark.parametrize("seed", range(200))
def test_matches_exhaustive_path_search(seed: int) -> None:
    rng = np.random.default_rng(seed)
    cells = rng.random((4, 4)) < 0.7
    wrap_x, wrap_y = bool(seed % 2), bool(seed // 2 % 2)
    image = PoreImage(cells, periodic_x=wrap_x, periodic_y=wrap_y)
    for axis, expected in (
        ("x", _oracle_tau(cells, wrap_x, wrap_y)),
        ("y", _oracle_tau(cells.T, wrap_y, wrap_x)),
    ):
        if expected is None:
            with pytest.raises(NoCrossingPathError):
                tortuosity(image, axis)
            continue
        assert tortuosity(image, axis) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_quarter_turn_swaps_axes(seed: int) -> None:
    rng = np.random.default_rng(100 + seed)
    image = PoreImage(rng.random((7, 7)) < 0.65, periodic_x=False, periodic_y=False)
    rotated = image.rotate90()
    for axis, other in (("x", "y"), ("y", "x")):
        try:
            expected = tortuosity(image, other)
        except NoCrossingPathError:
            with pytest.raises(NoCrossingPathError):
                tortuosity(rotated, axis)
            continue
        assert tortuosity(rotated, axis) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_mirroring_keeps_tortuosity(seed: int) -> None:
    rng = np.random.default_rng(400 + seed)
    image = PoreImage(rng.random((8, 10)) < 0.65, periodic_x=False, periodic_y=False)
    for axis in ("x", "y"):
        try:
            expected = tortuosity(image, axis)
        except NoCrossingPathError:
            for flipped in (image.mirror("x"), image.mirror("y")):
                with pytest.raises(NoCrossingPathError):
                    tortuosity(flipped, axis)
            continue
        assert tortuosity(image.mirror("x"), axis) == pytest.approx(expected, rel=1e-12)
        assert tortuosity(image.mirror("y"), axis) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_tortuosity_is_at_least_one(seed: int) -> None:
    rng = np.random.default_rng(200 + seed)
    image = PoreImage(rng.random((12, 12)) < 0.7)
    for axis in ("x", "y"):
        try:
            assert tortuosity(image, axis) >= 1.0
        except NoCrossingPathError:
            pass


def test_unknown_axis() -> None:
    with pytest.raises(ValueError):
        tortuosity(PoreImage.filled(3, 3), "z")
