from __future__ import annotations

import itertools

import numpy as np
import pytest

from porebench.exceptions import DegenerateAxisError, NoBoundaryVoidError
from porebench.geometry import PoreImage
from porebench.metrics import max_flow, max_flow_cut


def _edges(cells: np.ndarray, wrap_rows: bool) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    height, width = cells.shape
    out = []
    for r, c in itertools.product(range(height), range(width)):
        if not cells[r, c]:
            continue
        if c + 1 < width and cells[r, c + 1]:
            out.append(((r, c), (r, c + 1)))
        if r + 1 < height and cells[r + 1, c]:
            out.append(((r, c), (r + 1, c)))
        elif r + 1 == height and wrap_rows and height > 2 and cells[0, c]:
            out.append(((r, c), (0, c)))
    return out


def _oracle_min_cut(cells: np.ndarray, wrap_rows: bool) -> int:
    """Smallest edge cut separating the left face from the right face, by enumeration."""
    width = cells.shape[1]
    pixels = [tuple(p) for p in np.argwhere(cells)]
    index = {p: i for i, p in enumerate(pixels)}
    free = [i for i, (_, c) in enumerate(pixels) if 0 < c < width - 1]
    fixed_source = np.array([c == 0 for _, c in pixels])

    edges = np.array([(index[a], index[b]) for a, b in _edges(cells, wrap_rows)], dtype=int)
    if len(edges) == 0:
        return 0
    choices = np.array(list(itertools.product((False, True), repeat=len(free))), dtype=bool)
    sides = np.tile(fixed_source, (len(choices), 1))
    if free:
        sides[:, free] = choices
    crossing = sides[:, edges[:, 0]] != sides[:, edges[:, 1]]
    return int(crossing.sum(axis=1).min())


def _oracle(image: PoreImage, axis: str) -> int:
    if axis == "x":
        return _oracle_min_cut(image.cells, image.periodic_y)
    return _oracle_min_cut(image.cells.T, image.periodic_x)


def test_open_cell_flow_equals_face_width() -> None:
    closed = PoreImage.filled(4, 4, periodic_x=False, periodic_y=False)
    assert max_flow(closed, "x") == 4
    assert max_flow(closed, "y") == 4
    assert max_flow(PoreImage.filled(10, 10), "x") == 10


@pytest.mark.parametrize("width", [1, 2, 3, 5])
def test_channel_flow_equals_channel_width(width: int) -> None:
    cells = np.zeros((8, 8), dtype=bool)
    cells[2 : 2 + width, :] = True
    assert max_flow(PoreImage(cells, periodic_x=False, periodic_y=False), "x") == width


def test_wall_stops_the_flow() -> None:
    cells = np.ones((6, 6), dtype=bool)
    cells[:, 3] = False
    image = PoreImage(cells)
    assert max_flow(image, "x") == 0
    assert max_flow(image, "y") == 5


def test_cut_is_inside_the_geometry() -> None:
    image = PoreImage.from_strings(
        ["......", "..##..", "..#...", "......"], periodic_x=False, periodic_y=False
    )
    result = max_flow_cut(image, "x")
    assert result.value == 2
    assert len(result.cut_edges) == result.value
    for r0, c0, r1, c1 in result.cut_edges:
        assert image.cells[r0, c0] and image.cells[r1, c1]
        assert abs(r0 - r1) + abs(c0 - c1) == 1
    assert result.cut_mask.sum() >= result.value


def test_empty_face_is_reported() -> None:
    cells = np.ones((4, 4), dtype=bool)
    cells[:, 0] = False
    with pytest.raises(NoBoundaryVoidError):
        max_flow(PoreImage(cells), "x")


def test_single_pixel_axis_is_degenerate() -> None:
    with pytest.raises(DegenerateAxisError):
        max_flow(PoreImage.filled(1, 5), "x")
    assert max_flow(PoreImage.filled(1, 5), "y") == 1


def test_unknown_axis() -> None:
    with pytest.raises(ValueError):
        max_flow(PoreImage.filled(3, 3), "z")


def test_matches_enumeration_on_every_three_by_three_image() -> None:
    for bits in range(512):
        cells = np.array([(bits >> k) & 1 for k in range(9)], dtype=bool).reshape(3, 3)
        image = PoreImage(cells)
        for axis in ("x", "y"):
            if axis == "x":
                faces_open = cells[:, 0].any() and cells[:, -1].any()
            else:
                faces_open = cells[0, :].any() and cells[-1, :].any()
            if not faces_open:
                with pytest.raises(NoBoundaryVoidError):
                    max_flow(image, axis)
                continue
            assert max_flow(image, axis) == _oracle(image, axis), (bits, axis)


@pytest.mark.parametrize("seed", range(200))
def test_matches_enumeration_on_random_images(seed: int) -> None:
    rng = np.random.default_rng(seed)
    image = PoreImage(
        rng.random((5, 5)) < 0.6, periodic_x=bool(seed % 2), periodic_y=bool(seed // 2 % 2)
    )
    for axis in ("x", "y"):
        try:
            value = max_flow(image, axis)
        except NoBoundaryVoidError:
            continue
        assert value == _oracle(image, axis)


@pytest.mark.parametrize("seed", range(10))
def test_symmetries(seed: int) -> None:
    rng = np.random.default_rng(50 + seed)
    image = PoreImage(rng.random((8, 6)) < 0.6, periodic_x=True, periodic_y=bool(seed % 2))
    rotated = image.rotate90()
    for axis, other in (("x", "y"), ("y", "x")):
        try:
            value = max_flow(image, axis)
        except NoBoundaryVoidError:
            value = None
        if value is None:
            continue
        assert max_flow(rotated, other) == value
        assert max_flow(image.mirror("x"), axis) == value
        assert max_flow(image.mirror("y"), axis) == value


@pytest.mark.parametrize("seed", range(20))
def test_quarter_turn_swaps_axes_on_closed_images(seed: int) -> None:
    rng = np.random.default_rng(300 + seed)
    image = PoreImage(rng.random((7, 9)) < 0.65, periodic_x=False, periodic_y=False)
    rotated = image.rotate90()
    assert not rotated.periodic_x and not rotated.periodic_y
    for axis, other in (("x", "y"), ("y", "x")):
        try:
            value = max_flow(image, axis)
        except NoBoundaryVoidError:
            with pytest.raises(NoBoundaryVoidError):
                max_flow(rotated, other)
            continue
        assert max_flow(rotated, other) == value
