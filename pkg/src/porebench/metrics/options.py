"""Tunable knobs of the metric pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class DirectionalityNorm(str, Enum):
    """Denominator of the directionality histogram.

    ``directional`` divides by the boundary pixels that fall into a bin, so the
    histogram sums to one. ``all`` divides by every boundary-adjacent pixel,
    including slit pixels whose normals cancel.
    """

    DIRECTIONAL = "directional"
    ALL = "all"


@dataclass(frozen=True, slots=True)
class MetricsOptions:
    smoothing_radius: int = 2
    discontinuity_threshold: float = 0.5
    tortuosity_sources: int | None = None
    directionality_norm: DirectionalityNorm = DirectionalityNorm.DIRECTIONAL
