"""Configuration primitives for porebench."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from porebench.metrics.options import MetricsOptions


def _default_threads() -> int:
    return max(1, os.cpu_count() or 1)


@dataclass(slots=True)
class BenchConfig:
    """Runtime configuration loaded from environment variables.

    Environment variables:
    - `POREBENCH_LOG_LEVEL`
    - `POREBENCH_THREADS`
    - `POREBENCH_SMOOTHING_RADIUS`
    - `POREBENCH_DISCONTINUITY`
    - `POREBENCH_TORTUOSITY_SOURCES`
    """

    log_level: str = "INFO"
    threads: int = field(default_factory=_default_threads)
    smoothing_radius: int = 2
    discontinuity_threshold: float = 0.5
    tortuosity_sources: int = 0

    @classmethod
    def from_env(cls) -> BenchConfig:
        """Build a config object from environment variables."""
        threads = int(os.getenv("POREBENCH_THREADS", "0"))
        return cls(
            log_level=os.getenv("POREBENCH_LOG_LEVEL", "INFO"),
            threads=threads if threads > 0 else _default_threads(),
            smoothing_radius=int(os.getenv("POREBENCH_SMOOTHING_RADIUS", "2")),
            discontinuity_threshold=float(os.getenv("POREBENCH_DISCONTINUITY", "0.5")),
            tortuosity_sources=int(os.getenv("POREBENCH_TORTUOSITY_SOURCES", "0")),
        )

    def metrics_options(self) -> MetricsOptions:
        """Options handed to the metric pipeline."""
        return MetricsOptions(
            smoothing_radius=self.smoothing_radius,
            discontinuity_threshold=self.discontinuity_threshold,
            tortuosity_sources=self.tortuosity_sources or None,
        )
