from __future__ import annotations

import numpy as np
import pytest

from porebench.exceptions import NoVoidSpaceError
from porebench.geometry import PoreImage
from porebench.preprocess import (
    check_periodic_connectivity,
    clean,
    keep_largest_component,
    label_components,
)


def test_isolated_pixels_tie_goes_to_first_seen() -> None:
    image = PoreImage.from_strings(
        [".###", "####", "##.#", "####"], periodic_x=False, periodic_y=False
    )
    labeling = label_components(image)
    assert labeling.count == 2
    assert labeling.labels[0, 0] == 1 and labeling.labels[2, 2] == 2
    kept = keep_largest_component(image)
    assert kept.void_count == 1
    assert kept.cells[0, 0]


def test_all_void_and_all_solid_counts() -> None:
    assert label_components(PoreImage.filled(5, 4)).count == 1
    assert label_components(PoreImage.filled(5, 4, void=False)).count == 0


def test_periodic_flags_merge_components_across_the_boundary() -> None:
    rows = ["####", ".##.", "####", "####"]
    assert label_components(PoreImage.from_strings(rows)).count == 1
    assert label_components(PoreImage.from_strings(rows, periodic_x=False)).count == 2


def test_largest_component_is_kept() -> None:
    image = PoreImage.from_strings(
        ["..#.", "..#.", "####", "#..#"], periodic_x=False, periodic_y=False
    )
    kept = keep_largest_component(image)
    assert kept.void_count == 4
    assert kept.cells[:2, :2].all()
    assert keep_largest_component(kept) is kept


def test_keep_largest_needs_void() -> None:
    with pytest.raises(NoVoidSpaceError):
        keep_largest_component(PoreImage.filled(3, 3, void=False))


def test_solid_bar_blocks_only_the_crossing_axis() -> None:
    cells = np.ones((6, 6), dtype=bool)
    cells[3, :] = False
    report = check_periodic_connectivity(PoreImage(cells))
    assert report.connected_x is True
    assert report.connected_y is False


def test_all_solid_is_not_connected() -> None:
    report = check_periodic_connectivity(PoreImage.filled(4, 4, void=False))
    assert (report.connected_x, report.connected_y, report.n_components) == (False, False, 0)
    assert report.highly_discontinuous is False


def test_winding_is_checked_with_wrapped_boundaries() -> None:
    # a closed loop inside the cell touches no boundary twice
    image = PoreImage.from_strings(
        ["#####", "#...#", "#.#.#", "#...#", "#####"], periodic_x=False, periodic_y=False
    )
    report = check_periodic_connectivity(image)
    assert (report.connected_x, report.connected_y) == (False, False)

    open_rows = PoreImage.filled(5, 5, periodic_x=False, periodic_y=False)
    report = check_periodic_connectivity(open_rows)
    assert (report.connected_x, report.connected_y) == (True, True)


def test_diagonal_channel_winds_in_both_directions() -> None:
    size = 6
    cells = np.zeros((size, size), dtype=bool)
    for i in range(size):
        cells[i, i] = True
        cells[i, (i + 1) % size] = True
    report = check_periodic_connectivity(PoreImage(cells))
    assert report.connected_x and report.connected_y


def test_discontinuity_flag_uses_threshold() -> None:
    image = PoreImage.from_strings(
        ["..##", "####", "#.##", "####"], periodic_x=False, periodic_y=False
    )
    assert check_periodic_connectivity(image).highly_discontinuous is False
    assert check_periodic_connectivity(image, discontinuity_threshold=0.9).highly_discontinuous


def test_scattered_pores_are_flagged() -> None:
    cells = np.zeros((9, 9), dtype=bool)
    cells[::3, ::3] = True
    report = check_periodic_connectivity(PoreImage(cells))
    assert report.n_components == 9
    assert report.largest_fraction == pytest.approx(1 / 9)
    assert report.highly_discontinuous


def test_clean_reports_on_the_raw_image() -> None:
    image = PoreImage.from_strings(["..#.", "..#.", "####", "#..#"], periodic_x=False, periodic_y=False)
    result = clean(image)
    assert result.report.n_components == 3
    assert result.removed_pixels == 4
    assert result.image.void_count == 4
    assert result.report.to_dict()["n_components"] == 3
