"""Periodic binary pore rasters and generator specifications."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Any

import numpy as np

DEFAULT_RESOLUTION = 200

VOID_CHARS = frozenset(".0_ ")


class GeneratorKind(str, Enum):
    SQUARE = "square"
    RECTANGLE = "rectangle"
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    TRIANGLE = "triangle"
    CROSS = "cross"
    PERLIN = "perlin"
    FRACTAL = "fractal"
    VORONOI = "voronoi"

    @property
    def is_shape(self) -> bool:
        return self in SHAPE_KINDS

    @property
    def is_noise(self) -> bool:
        return self in (GeneratorKind.PERLIN, GeneratorKind.FRACTAL)


SHAPE_KINDS = frozenset(
    {
        GeneratorKind.SQUARE,
        GeneratorKind.RECTANGLE,
        GeneratorKind.CIRCLE,
        GeneratorKind.ELLIPSE,
        GeneratorKind.TRIANGLE,
        GeneratorKind.CROSS,
    }
)


@dataclass(frozen=True, slots=True, eq=False)
class PoreImage:
    """Row-major binary raster of one unit cell; ``True`` marks void pixels.

    Row 0 is the top of the image. The cell array is copied and frozen on
    construction, so images are safe to share between threads.
    """

    cells: np.ndarray
    pixel_length: float = 1.0
    periodic_x: bool = True
    periodic_y: bool = True

    def __post_init__(self) -> None:
        cells = np.array(self.cells, dtype=bool, copy=True)
        if cells.ndim != 2 or cells.shape[0] < 1 or cells.shape[1] < 1:
            raise ValueError(f"PoreImage needs a non-empty 2D grid, got shape {cells.shape}")
        if not self.pixel_length > 0:
            raise ValueError("pixel_length must be positive")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_strings(cls, rows: Sequence[str], **kwargs: Any) -> PoreImage:
        """Build an image from text rows: ``.`` is void, ``#`` is solid."""
        grid = [[char in VOID_CHARS for char in row] for row in rows]
        return cls(np.array(grid, dtype=bool), **kwargs)

    @classmethod
    def filled(cls, width: int, height: int, void: bool = True, **kwargs: Any) -> PoreImage:
        return cls(np.full((height, width), void, dtype=bool), **kwargs)

    @property
    def width(self) -> int:
        return int(self.cells.shape[1])

    @property
    def height(self) -> int:
        return int(self.cells.shape[0])

    @property
    def void_count(self) -> int:
        return int(np.count_nonzero(self.cells))

    @property
    def total_count(self) -> int:
        return int(self.cells.size)

    def with_cells(self, cells: np.ndarray) -> PoreImage:
        """Same metadata, new pixel grid."""
        return replace(self, cells=cells)

    def tile(self, nx: int = 2, ny: int = 2) -> PoreImage:
        return self.with_cells(np.tile(self.cells, (ny, nx)))

    def rotate90(self) -> PoreImage:
        """Rotate a quarter turn counterclockwise; x and y flags swap."""
        return replace(
            self,
            cells=np.rot90(self.cells),
            periodic_x=self.periodic_y,
            periodic_y=self.periodic_x,
        )

    def mirror(self, axis: str = "x") -> PoreImage:
        """Mirror across the vertical (``x``) or horizontal (``y``) midline."""
        flip_axis = 1 if axis == "x" else 0
        return self.with_cells(np.flip(self.cells, axis=flip_axis))

    def roll(self, dy: int, dx: int) -> PoreImage:
        """Toroidal translation."""
        return self.with_cells(np.roll(self.cells, (dy, dx), axis=(0, 1)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PoreImage):
            return NotImplemented
        return (
            self.cells.shape == other.cells.shape
            and bool(np.array_equal(self.cells, other.cells))
            and self.pixel_length == other.pixel_length
            and self.periodic_x == other.periodic_x
            and self.periodic_y == other.periodic_y
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"PoreImage(width={self.width}, height={self.height}, void={self.void_count}, "
            f"periodic=({self.periodic_x}, {self.periodic_y}))"
        )


@dataclass(frozen=True, slots=True)
class GeneratorSpec:
    """Parameters for every generator kind.

    Shape sizes are in pixels: ``radius`` for circles and triangles
    (circumradius), ``half_width``/``half_height`` for squares, rectangles and
    ellipses. Crosses use ``half_width`` as arm half-length and ``half_height``
    as arm half-thickness. ``rotation`` is counterclockwise in degrees.
    """

    kind: GeneratorKind
    radius: float = 0.0
    half_width: float = 0.0
    half_height: float = 0.0
    rotation: float = 0.0
    scale: int = 50
    threshold: float = 0.5
    octaves: int = 4
    persistence: float = 0.5
    seeds: int = 8
    aperture: float = 2.0
    rng_seed: int = 0
    points: tuple[tuple[float, float], ...] | None = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", GeneratorKind(self.kind))
        if self.points is not None:
            object.__setattr__(
                self, "points", tuple((float(x), float(y)) for x, y in self.points)
            )

    def to_dict(self) -> dict[str, Any]:
        payload = asdict(self)
        payload["kind"] = self.kind.value
        if self.points is None:
            payload.pop("points")
        else:
            payload["points"] = [list(point) for point in self.points]
        return payload
