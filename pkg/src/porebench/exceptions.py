"""Custom exceptions for porebench.

Every error carries a stable ``code`` that the CLI reports in its structured
error objects.
"""

from __future__ import annotations

from collections.abc import Sequence


class PoreBenchError(Exception):
    """Base exception for all library errors."""

    code = "PoreBenchError"

    def to_dict(self) -> dict[str, str]:
        """Structured form used by CLI error reports."""
        return {"code": self.code, "message": str(self)}


class UnknownEntryError(PoreBenchError):
    """Raised when a name cannot be found in a registry."""

    code = "UnknownEntry"


# Geometry


class InvalidSpecError(PoreBenchError, ValueError):
    """Raised when a generator spec is inconsistent with the requested generator."""

    code = "InvalidSpec"


class ShapeTooLargeError(PoreBenchError):
    """Raised when a solid inclusion would touch or cross the cell boundary."""

    code = "ShapeTooLarge"


class NonWrappingScaleError(PoreBenchError):
    """Raised when a noise lattice would not wrap around the cell."""

    code = "NonWrappingScale"


class DegenerateSeedsError(PoreBenchError):
    """Raised when two Voronoi seeds coincide."""

    code = "DegenerateSeeds"


# File formats


class MalformedHeaderError(PoreBenchError):
    """Raised when a raster or field header cannot be parsed."""

    code = "MalformedHeader"


class TruncatedPayloadError(PoreBenchError):
    """Raised when a file ends before its declared payload."""

    code = "TruncatedPayload"


class UnsupportedMagicError(PoreBenchError):
    """Raised for Netpbm variants other than P1/P2/P4/P5."""

    code = "UnsupportedMagic"


class FieldFormatError(PoreBenchError):
    """Raised when a PSF1 field file is invalid."""

    code = "FieldFormat"


# Analysis


class NoVoidSpaceError(PoreBenchError):
    """Raised when an operation needs at least one void pixel."""

    code = "NoVoidSpace"


class NoCrossingPathError(PoreBenchError):
    """Raised when no void path crosses the cell along the requested axis."""

    code = "NoCrossingPath"


class NoBoundaryVoidError(PoreBenchError):
    """Raised when a boundary face of the requested axis has no void pixel."""

    code = "NoBoundaryVoid"


class DegenerateAxisError(PoreBenchError):
    """Raised when the cell is a single pixel wide along the requested axis."""

    code = "DegenerateAxis"


# Averaging


class EmptyWindowError(PoreBenchError):
    """Raised when averaging windows contain no void pixel.

    ``windows`` lists the offending window indices as ``(row, col)`` tuples.
    """

    code = "EmptyWindow"

    def __init__(self, message: str, windows: Sequence[tuple[int, int]] = ()) -> None:
        super().__init__(message)
        self.windows = [tuple(int(i) for i in window) for window in windows]

    def to_dict(self) -> dict[str, object]:  # type: ignore[override]
        payload: dict[str, object] = dict(super().to_dict())
        payload["windows"] = [list(window) for window in self.windows]
        return payload


class NonDividingSubgridError(PoreBenchError, ValueError):
    """Raised when a sub-averaging grid does not divide the image."""

    code = "NonDividingSubgrid"


class EvenFilterError(PoreBenchError, ValueError):
    """Raised when a convolution filter has an even extent."""

    code = "EvenFilter"


class InvalidSchemeError(PoreBenchError, ValueError):
    """Raised when an averaging scheme does not fit the field dimensions."""

    code = "InvalidScheme"


class MaskMismatchError(PoreBenchError):
    """Raised when fields do not share a mask."""

    code = "MaskMismatch"


# Closure


class MapeZeroTargetError(PoreBenchError):
    """Raised when MAPE is requested for samples with zero targets."""

    code = "MapeZeroTarget"


class NonFiniteLossError(PoreBenchError):
    """Raised when a closure model yields non-finite losses on every start."""

    code = "NonFiniteLoss"
