from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from porebench.exceptions import (
    MalformedHeaderError,
    TruncatedPayloadError,
    UnsupportedMagicError,
)
from porebench.geometry import GeneratorKind, GeneratorSpec, generate, read_raster, write_raster
from porebench.geometry.raster import encode_raster, parse_raster, write_label_pgm


def test_plain_pbm_black_is_solid() -> None:
    image = parse_raster(b"P1\n2 2\n0 1\n1 0\n")
    assert image.cells.tolist() == [[True, False], [False, True]]


def test_plain_pbm_accepts_comments_and_packed_digits() -> None:
    image = parse_raster(b"P1\n# comment line\n3 1 # trailing\n010")
    assert image.cells.tolist() == [[True, False, True]]


def test_binary_pgm_thresholds_at_mid_gray() -> None:
    data = b"P5\n3 1\n255\n" + bytes([255, 128, 127])
    assert parse_raster(data).cells.tolist() == [[True, True, False]]
    assert parse_raster(b"P5\n2 2\n255\n" + bytes([255] * 4)).void_count == 4


def test_plain_pgm() -> None:
    image = parse_raster(b"P2\n2 1\n15\n15 0\n")
    assert image.cells.tolist() == [[True, False]]


def test_binary_pbm_row_padding() -> None:
    # width 10 packs into two bytes per row
    data = b"P4\n10 1\n" + bytes([0b01000000, 0b01000000])
    assert np.flatnonzero(~parse_raster(data).cells[0]).tolist() == [1, 9]


@pytest.mark.parametrize(
    ("data", "error"),
    [
        (b"P3\n1 1\n255\n0 0 0\n", UnsupportedMagicError),
        (b"GIF89a", UnsupportedMagicError),
        (b"P1\nx 2\n", MalformedHeaderError),
        (b"P1\n0 2\n", MalformedHeaderError),
        (b"P1\n2 2\n0 1 2 0\n", MalformedHeaderError),
        (b"P5\n2 2\n0\n\x00\x00\x00\x00", MalformedHeaderError),
        (b"P1\n2 2\n0 1\n", TruncatedPayloadError),
        (b"P4\n8 2\n\x00", TruncatedPayloadError),
        (b"P5\n2 2\n255\n\x00\x00", TruncatedPayloadError),
    ],
)
def test_malformed_rasters(data: bytes, error: type[Exception]) -> None:
    with pytest.raises(error):
        parse_raster(data)


@pytest.mark.parametrize("plain", [False, True])
def test_written_geometry_reads_back(tmp_path: Path, plain: bool) -> None:
    image = generate(GeneratorSpec(kind=GeneratorKind.VORONOI, seeds=6, aperture=2, rng_seed=3), 75, 40)
    path = write_raster(image, tmp_path / "nested" / "cell.pbm", plain=plain)
    assert read_raster(path) == image


def test_plain_lines_stay_short() -> None:
    encoded = encode_raster(generate(GeneratorSpec(kind=GeneratorKind.CIRCLE, radius=40)), plain=True)
    assert max(len(line) for line in encoded.splitlines()) <= 70


def test_read_raster_applies_metadata(tmp_path: Path) -> None:
    path = tmp_path / "cell.pbm"
    path.write_bytes(b"P1\n2 1\n0 0\n")
    image = read_raster(path, pixel_length=0.5, periodic_x=False)
    assert image.pixel_length == 0.5
    assert image.periodic_x is False and image.periodic_y is True


def test_label_pgm_keeps_background_black(tmp_path: Path) -> None:
    path = write_label_pgm(np.array([[0, 1], [256, 2]]), tmp_path / "labels.pgm")
    payload = path.read_bytes().split(b"255\n", 1)[1]
    assert list(payload) == [0, 1, 1, 2]
