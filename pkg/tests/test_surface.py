from __future__ import annotations

import math

import numpy as np
import pytest

from porebench.exceptions import NoVoidSpaceError
from porebench.geometry import PoreImage
from porebench.metrics import DIRECTIONS, DirectionalityNorm, surface_metrics


def _random_image(seed: int, size: int = 24, periodic: bool = True) -> PoreImage:
    rng = np.random.default_rng(seed)
    return PoreImage(rng.random((size, size)) < 0.6, periodic_x=periodic, periodic_y=periodic)


def test_single_solid_pixel() -> None:
    cells = np.ones((10, 10), dtype=bool)
    cells[4, 6] = False
    metrics = surface_metrics(PoreImage(cells))
    assert metrics.specific_surface == 0.04
    assert metrics.directionality == (0.25, 0.0, 0.25, 0.0, 0.25, 0.0, 0.25, 0.0)
    assert metrics.directionality_std == pytest.approx(0.125)
    assert metrics.boundary_pixels == 4


@pytest.mark.parametrize(
    ("rows", "direction"),
    [(["#."], "E"), ([".#"], "W"), (["#", "."], "S"), ([".", "#"], "N")],
)
def test_normals_point_from_solid_into_void(rows: list[str], direction: str) -> None:
    metrics = surface_metrics(PoreImage.from_strings(rows, periodic_x=False, periodic_y=False))
    assert metrics.as_dict()[direction] == 1.0
    assert metrics.specific_surface == 0.5


def test_corner_pixel_counts_a_diagonal_face() -> None:
    image = PoreImage.from_strings(["##", ".#"], periodic_x=False, periodic_y=False)
    metrics = surface_metrics(image)
    assert metrics.raw_surface == pytest.approx(math.sqrt(2))
    assert metrics.specific_surface == pytest.approx(math.sqrt(2) / 4)
    assert metrics.as_dict()["SW"] == 1.0


def test_slit_pixels_have_no_direction() -> None:
    image = PoreImage.from_strings(["###", "...", "###"], periodic_x=False, periodic_y=False)
    metrics = surface_metrics(image)
    assert metrics.raw_surface == 6
    assert metrics.specific_surface == pytest.approx(6 / 9)
    assert metrics.directionality == (0.0,) * 8
    assert metrics.directional_pixels == 0
    assert metrics.boundary_pixels == 3


def test_three_face_pixel_is_diagonal() -> None:
    image = PoreImage.from_strings(["###", "#..", "###"], periodic_x=False, periodic_y=False)
    metrics = surface_metrics(image)
    assert metrics.raw_surface == pytest.approx(2 + math.sqrt(2))
    assert metrics.as_dict()["E"] == 1.0
    everything = surface_metrics(image, DirectionalityNorm.ALL)
    assert everything.as_dict()["E"] == 0.5


def test_isolated_void_pixel_counts_four_faces() -> None:
    image = PoreImage.from_strings(["###", "#.#", "###"])
    metrics = surface_metrics(image)
    assert metrics.raw_surface == 4
    assert metrics.directional_pixels == 0


def test_sparse_inclusions_conserve_faces() -> None:
    cells = np.ones((12, 12), dtype=bool)
    cells[::3, ::3] = False
    metrics = surface_metrics(PoreImage(cells))
    assert metrics.raw_surface == 4 * 16
    assert metrics.specific_surface == 64 / 144


def test_pixel_length_scales_surface() -> None:
    cells = np.ones((10, 10), dtype=bool)
    cells[5, 5] = False
    metrics = surface_metrics(PoreImage(cells, pixel_length=0.5))
    assert metrics.specific_surface == pytest.approx(0.04 / 0.5)


def test_all_void_has_no_surface() -> None:
    metrics = surface_metrics(PoreImage.filled(6, 6))
    assert metrics.specific_surface == 0.0
    assert metrics.directionality == (0.0,) * 8
    assert metrics.directionality_std == 0.0


def test_all_solid_is_rejected() -> None:
    with pytest.raises(NoVoidSpaceError):
        surface_metrics(PoreImage.filled(3, 3, void=False))


@pytest.mark.parametrize("seed", range(5))
def test_directionality_sums_to_one(seed: int) -> None:
    metrics = surface_metrics(_random_image(seed))
    assert sum(metrics.directionality) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("periodic", [True, False])
def test_mirror_permutes_bins(seed: int, periodic: bool) -> None:
    image = _random_image(seed, periodic=periodic)
    base = surface_metrics(image)

    flipped_x = surface_metrics(image.mirror("x"))
    assert flipped_x.specific_surface == base.specific_surface
    assert flipped_x.directionality == tuple(base.directionality[(4 - k) % 8] for k in range(8))

    flipped_y = surface_metrics(image.mirror("y"))
    assert flipped_y.specific_surface == base.specific_surface
    assert flipped_y.directionality == tuple(base.directionality[(-k) % 8] for k in range(8))


@pytest.mark.parametrize("seed", range(3))
def test_quarter_turn_rotates_bins(seed: int) -> None:
    image = _random_image(seed, periodic=False)
    base = surface_metrics(image)
    rotated = surface_metrics(image.rotate90())
    assert rotated.specific_surface == base.specific_surface
    assert rotated.directionality == tuple(base.directionality[(k - 2) % 8] for k in range(8))


def test_direction_labels() -> None:
    assert DIRECTIONS[0] == "E" and DIRECTIONS[2] == "N"
