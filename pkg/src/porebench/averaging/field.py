"""Pore-scale scalar fields and their PSF1 binary format.

PSF1 layout: ``b"PSF1"``, width and height as little-endian uint32, four
reserved zero bytes, then ``width * height`` little-endian float64 values in
row-major order. Solid pixels are stored as NaN.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

import numpy as np

from porebench.exceptions import (
    FieldFormatError,
    MalformedHeaderError,
    MaskMismatchError,
    TruncatedPayloadError,
)
from porebench.geometry.image import PoreImage
from porebench.geometry.raster import write_pgm

logger = logging.getLogger(__name__)

PSF1_MAGIC = b"PSF1"
_HEADER = struct.Struct("<4sII4s")
_VALUE_DTYPE = np.dtype("<f8")


@dataclass(frozen=True, slots=True, eq=False)
class ScalarField:
    """Real values defined on the void pixels of ``mask``; solid values are ignored."""

    values: np.ndarray
    mask: PoreImage

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape != self.mask.cells.shape:
            raise MaskMismatchError(
                f"field shape {values.shape} does not match mask shape {self.mask.cells.shape}"
            )
        if not np.isfinite(values[self.mask.cells]).all():
            raise ValueError("field values must be finite on void pixels")
        values[~self.mask.cells] = 0.0
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, mask: PoreImage, value: float) -> ScalarField:
        return cls(np.full(mask.cells.shape, float(value)), mask)

    @property
    def width(self) -> int:
        return self.mask.width

    @property
    def height(self) -> int:
        return self.mask.height

    def void_values(self) -> np.ndarray:
        return self.values[self.mask.cells]

    def with_values(self, values: np.ndarray) -> ScalarField:
        return replace(self, values=values)

    def shares_mask(self, other: ScalarField) -> bool:
        return self.mask.cells.shape == other.mask.cells.shape and bool(
            np.array_equal(self.mask.cells, other.mask.cells)
        )

    def roll(self, dy: int, dx: int) -> ScalarField:
        """Toroidal translation of values and mask together."""
        return ScalarField(np.roll(self.values, (dy, dx), axis=(0, 1)), self.mask.roll(dy, dx))

    def __add__(self, other: ScalarField) -> ScalarField:
        require_shared_mask(self, other)
        return self.with_values(self.values + other.values)

    def __mul__(self, factor: float) -> ScalarField:
        return self.with_values(self.values * float(factor))

    __rmul__ = __mul__


def require_shared_mask(first: ScalarField, second: ScalarField) -> None:
    if not first.shares_mask(second):
        raise MaskMismatchError("fields are defined on different void masks")


def encode_field(field: ScalarField) -> bytes:
    stored = np.where(field.mask.cells, field.values, np.nan).astype(_VALUE_DTYPE)
    header = _HEADER.pack(PSF1_MAGIC, field.width, field.height, b"\0" * 4)
    return header + stored.tobytes()


def decode_field(data: bytes, **image_kwargs: Any) -> ScalarField:
    """Parse PSF1 bytes; the void mask is the set of finite values."""
    if len(data) < _HEADER.size:
        raise MalformedHeaderError(f"PSF1 header needs {_HEADER.size} bytes, got {len(data)}")
    magic, width, height, reserved = _HEADER.unpack_from(data)
    if magic != PSF1_MAGIC:
        raise FieldFormatError(f"bad field magic {magic!r}, expected {PSF1_MAGIC!r}")
    if width == 0 or height == 0:
        raise MalformedHeaderError(f"field dimensions must be positive, got {width}x{height}")
    if reserved != b"\0" * 4:
        raise FieldFormatError("reserved PSF1 header bytes must be zero")
    needed = width * height * _VALUE_DTYPE.itemsize
    payload = data[_HEADER.size :]
    if len(payload) < needed:
        raise TruncatedPayloadError(f"PSF1 payload needs {needed} bytes, got {len(payload)}")
    values = np.frombuffer(payload[:needed], dtype=_VALUE_DTYPE).reshape(height, width)
    mask = PoreImage(np.isfinite(values), **image_kwargs)
    return ScalarField(np.nan_to_num(values, nan=0.0), mask)


def write_field(field: ScalarField, path: Path | str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(encode_field(field))
    return target


def read_field(
    path: Path | str,
    *,
    pixel_length: float = 1.0,
    periodic_x: bool = True,
    periodic_y: bool = True,
) -> ScalarField:
    field = decode_field(
        Path(path).read_bytes(),
        pixel_length=pixel_length,
        periodic_x=periodic_x,
        periodic_y=periodic_y,
    )
    logger.debug("Read %dx%d field from %s", field.width, field.height, path)
    return field


def write_field_pgm(field: ScalarField, path: Path | str) -> Path:
    """Quantized preview: void values scaled to 1..255, solid black."""
    void = field.mask.cells
    shade = np.zeros(void.shape, dtype=np.int64)
    if void.any():
        values = field.values[void]
        low, high = float(values.min()), float(values.max())
        span = high - low
        scaled = (values - low) / span if span > 0 else np.full(values.shape, 0.5)
        shade[void] = 1 + np.rint(scaled * 254).astype(np.int64)
    return write_pgm(shade, path)
