"""Netpbm raster I/O for pore images and debug overlays.

PBM polarity: 1 (black) is solid, 0 (white) is void. PGM images are read by
thresholding at mid-gray, so bright pixels are void.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from porebench.exceptions import (
    MalformedHeaderError,
    TruncatedPayloadError,
    UnsupportedMagicError,
)
from porebench.geometry.image import PoreImage

logger = logging.getLogger(__name__)

_WHITESPACE = b" \t\r\n\v\f"
_PLAIN_LINE = 70


class _HeaderReader:
    """Cursor over a Netpbm byte string that understands header comments."""

    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def skip_blank(self) -> None:
        data = self.data
        while self.pos < len(data):
            byte = data[self.pos : self.pos + 1]
            if byte in _WHITESPACE and byte:
                self.pos += 1
            elif byte == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            else:
                break

    def token(self) -> bytes:
        self.skip_blank()
        start = self.pos
        while (
            self.pos < len(self.data)
            and self.data[self.pos : self.pos + 1] not in _WHITESPACE
            and self.data[self.pos : self.pos + 1] != b"#"
        ):
            self.pos += 1
        return self.data[start : self.pos]

    def integer(self, what: str) -> int:
        raw = self.token()
        if not raw.isdigit():
            raise MalformedHeaderError(f"expected {what}, found {raw[:16]!r}")
        return int(raw)

    def binary_payload(self) -> bytes:
        """Payload after the single whitespace byte that ends a binary header."""
        if self.pos >= len(self.data) or self.data[self.pos : self.pos + 1] not in _WHITESPACE:
            raise MalformedHeaderError("binary header must end with one whitespace byte")
        return self.data[self.pos + 1 :]


def _read_plain_bits(reader: _HeaderReader, count: int) -> np.ndarray:
    bits: list[int] = []
    data = reader.data
    while len(bits) < count:
        reader.skip_blank()
        if reader.pos >= len(data):
            break
        char = data[reader.pos : reader.pos + 1]
        if char not in (b"0", b"1"):
            raise MalformedHeaderError(f"invalid plain PBM sample {char!r}")
        bits.append(char == b"1")
        reader.pos += 1
    if len(bits) < count:
        raise TruncatedPayloadError(f"plain PBM holds {len(bits)} of {count} pixels")
    return np.array(bits, dtype=bool)


def _read_plain_values(reader: _HeaderReader, count: int) -> np.ndarray:
    values: list[int] = []
    while len(values) < count:
        raw = reader.token()
        if not raw:
            break
        if not raw.isdigit():
            raise MalformedHeaderError(f"invalid plain PGM sample {raw[:16]!r}")
        values.append(int(raw))
    if len(values) < count:
        raise TruncatedPayloadError(f"plain PGM holds {len(values)} of {count} pixels")
    return np.array(values, dtype=np.int64)


def parse_raster(data: bytes, **image_kwargs: object) -> PoreImage:
    """Decode PBM (P1/P4) or PGM (P2/P5) bytes into a pore image."""
    magic = data[:2]
    if magic not in (b"P1", b"P2", b"P4", b"P5"):
        raise UnsupportedMagicError(f"unsupported Netpbm magic {magic!r}")
    reader = _HeaderReader(data)
    reader.pos = 2
    width = reader.integer("width")
    height = reader.integer("height")
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"invalid dimensions {width}x{height}")
    count = width * height

    if magic == b"P1":
        solid = _read_plain_bits(reader, count).reshape(height, width)
        return PoreImage(~solid, **image_kwargs)  # type: ignore[arg-type]

    if magic == b"P4":
        payload = reader.binary_payload()
        row_bytes = (width + 7) // 8
        if len(payload) < row_bytes * height:
            raise TruncatedPayloadError(
                f"P4 payload has {len(payload)} of {row_bytes * height} bytes"
            )
        packed = np.frombuffer(payload[: row_bytes * height], dtype=np.uint8)
        solid = np.unpackbits(packed.reshape(height, row_bytes), axis=1)[:, :width]
        return PoreImage(solid == 0, **image_kwargs)  # type: ignore[arg-type]

    maxval = reader.integer("maxval")
    if not 0 < maxval < 65536:
        raise MalformedHeaderError(f"invalid PGM maxval {maxval}")
    if magic == b"P2":
        values = _read_plain_values(reader, count)
    else:
        payload = reader.binary_payload()
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
        needed = count * dtype.itemsize
        if len(payload) < needed:
            raise TruncatedPayloadError(f"P5 payload has {len(payload)} of {needed} bytes")
        values = np.frombuffer(payload[:needed], dtype=dtype).astype(np.int64)
    void = 2 * values.reshape(height, width) > maxval
    return PoreImage(void, **image_kwargs)  # type: ignore[arg-type]


def read_raster(
    path: Path | str,
    *,
    pixel_length: float = 1.0,
    periodic_x: bool = True,
    periodic_y: bool = True,
) -> PoreImage:
    """Read a PBM or PGM geometry file."""
    data = Path(path).read_bytes()
    image = parse_raster(
        data, pixel_length=pixel_length, periodic_x=periodic_x, periodic_y=periodic_y
    )
    logger.debug("Read %s from %s", image, path)
    return image


def encode_raster(image: PoreImage, plain: bool = False) -> bytes:
    """Encode as binary (P4) or plain (P1) PBM."""
    solid = ~image.cells
    header = f"{'P1' if plain else 'P4'}\n{image.width} {image.height}\n".encode("ascii")
    if not plain:
        return header + np.packbits(solid, axis=1).tobytes()
    lines: list[str] = []
    for row in solid:
        digits = "".join("1" if bit else "0" for bit in row)
        lines.extend(digits[i : i + _PLAIN_LINE] for i in range(0, len(digits), _PLAIN_LINE))
    return header + ("\n".join(lines) + "\n").encode("ascii")


def write_raster(image: PoreImage, path: Path | str, plain: bool = False) -> Path:
    """Write a PBM geometry file; parent directories are created."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(encode_raster(image, plain=plain))
    return target


def write_pgm(values: np.ndarray, path: Path | str, maxval: int = 255) -> Path:
    """Write an integer array as a binary PGM (P5)."""
    grid = np.asarray(values)
    if grid.ndim != 2:
        raise ValueError("PGM output needs a 2D array")
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    clipped = np.clip(grid, 0, maxval).astype(dtype)
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    header = f"P5\n{grid.shape[1]} {grid.shape[0]}\n{maxval}\n".encode("ascii")
    target.write_bytes(header + clipped.tobytes())
    return target


def write_label_pgm(labels: np.ndarray, path: Path | str) -> Path:
    """Segment ids mod 255 (background 0 stays black)."""
    labels = np.asarray(labels, dtype=np.int64)
    shade = np.where(labels > 0, (labels - 1) % 255 + 1, 0)
    return write_pgm(shade, path)


def write_overlay_pgm(image: PoreImage, marked: np.ndarray, path: Path | str) -> Path:
    """Solid black, void white, marked pixels mid-gray."""
    shade = np.where(image.cells, 255, 0)
    shade[np.asarray(marked, dtype=bool)] = 128
    return write_pgm(shade, path)
