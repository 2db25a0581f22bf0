from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest

from porebench.exceptions import NoVoidSpaceError
from porebench.geometry import PoreImage
from porebench.metrics import distance_map, porosity, pore_size_distribution


def _disks(height: int, width: int, centers: list[tuple[int, int]], radius: int) -> np.ndarray:
    rows, cols = np.mgrid[0:height, 0:width]
    cells = np.zeros((height, width), dtype=bool)
    for row, col in centers:
        cells |= (rows - row) ** 2 + (cols - col) ** 2 <= radius**2
    return cells


def _closed(cells: np.ndarray) -> PoreImage:
    return PoreImage(cells, periodic_x=False, periodic_y=False)


def test_porosity_is_void_fraction() -> None:
    assert porosity(PoreImage.from_strings(["..##", "...."])) == 0.75


def test_distance_map_wraps_on_periodic_axes() -> None:
    cells = np.ones((1, 8), dtype=bool)
    cells[0, 0] = False
    periodic = distance_map(PoreImage(cells))
    closed = distance_map(_closed(cells))
    assert periodic[0, 7] == 1.0
    assert closed[0, 7] == 7.0
    assert periodic[0, 0] == 0.0


def test_distance_map_without_solid_is_infinite() -> None:
    assert np.isinf(distance_map(PoreImage.filled(4, 4))).all()


def test_single_disk_is_one_pore() -> None:
    image = _closed(_disks(40, 40, [(20, 20)], 8))
    psd = pore_size_distribution(image)
    assert psd.n_pores == 1
    assert psd.mean == image.void_count
    assert psd.std == 0.0


def test_identical_disks_have_zero_spread() -> None:
    image = _closed(_disks(40, 80, [(20, 20), (20, 60)], 8))
    psd = pore_size_distribution(image)
    assert psd.n_pores == 2
    assert psd.std == 0.0
    assert psd.volumes.sum() == image.void_count


def test_dumbbell_splits_at_the_throat() -> None:
    cells = _disks(40, 60, [(20, 20), (20, 40)], 8)
    cells[20, 28:33] = True
    image = _closed(cells)
    psd = pore_size_distribution(image)
    assert psd.n_pores == 2
    assert psd.volumes.sum() == image.void_count
    assert psd.labels[20, 20] != psd.labels[20, 40]
    assert (psd.labels[~image.cells] == 0).all()


def test_every_component_gets_a_pore() -> None:
    cells = np.zeros((12, 12), dtype=bool)
    cells[1, 1] = True
    cells[6:10, 6:10] = True
    psd = pore_size_distribution(_closed(cells))
    assert psd.n_pores == 2
    assert sorted(psd.volumes.tolist()) == [1, 16]


def test_open_cell_is_a_single_pore() -> None:
    psd = pore_size_distribution(PoreImage.filled(8, 8))
    assert psd.n_pores == 1
    assert psd.mean == 64


def test_periodic_tiling_keeps_pore_count_per_cell() -> None:
    cells = _disks(30, 30, [(15, 15)], 6)
    image = PoreImage(cells)
    assert pore_size_distribution(image).n_pores == 1
    assert pore_size_distribution(image.tile(2, 2)).n_pores == 4


def test_all_solid_is_rejected() -> None:
    with pytest.raises(NoVoidSpaceError):
        pore_size_distribution(PoreImage.filled(4, 4, void=False))


@pytest.mark.parametrize("periodic", [True, False])
def test_straight_channel_is_one_pore(periodic: bool) -> None:
    cells = np.zeros((40, 40), dtype=bool)
    cells[20, :] = True
    psd = pore_size_distribution(PoreImage(cells, periodic_x=periodic, periodic_y=periodic))
    assert psd.n_pores == 1
    assert psd.volumes.tolist() == [40]


def test_wide_channel_is_one_pore() -> None:
    cells = np.zeros((40, 40), dtype=bool)
    cells[19:22, :] = True
    psd = pore_size_distribution(PoreImage(cells))
    assert psd.n_pores == 1
    assert psd.volumes.tolist() == [120]


@pytest.mark.parametrize(
    "cells",
    [
        _disks(40, 60, [(20, 20), (20, 40)], 8),
        _disks(40, 80, [(12, 20), (26, 58)], 7),
        _disks(36, 36, [(10, 10), (25, 24)], 5),
    ],
)
@pytest.mark.parametrize("flip", [np.fliplr, np.flipud])
def test_mirroring_keeps_porosity_and_pore_count(
    cells: np.ndarray, flip: Callable[[np.ndarray], np.ndarray]
) -> None:
    image = _closed(cells)
    mirrored = _closed(flip(cells))
    assert porosity(mirrored) == porosity(image)
    assert pore_size_distribution(mirrored).n_pores == pore_size_distribution(image).n_pores
