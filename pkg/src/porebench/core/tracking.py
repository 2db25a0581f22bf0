"""Run and stage timing collection."""

from __future__ import annotations

import logging
import threading
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field

from porebench.core.models import RunStats

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class RunTracker:
    """Tracks timing and success counters for analysis runs.

    Batch analysis records from several worker threads, so updates are locked.
    """

    stats: RunStats = field(default_factory=RunStats)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    def start_run(self) -> float:
        """Mark run start and return the start clock."""
        with self._lock:
            self.stats.total_runs += 1
        return time.perf_counter()

    def end_run(self, started: float, success: bool, error: str | None = None) -> None:
        """Finalize run counters."""
        elapsed = time.perf_counter() - started
        with self._lock:
            if success:
                self.stats.successful_runs += 1
            else:
                self.stats.failed_runs += 1
                self.stats.last_error = error
            self.stats.total_runtime_seconds += elapsed

    @contextmanager
    def stage(self, stage_name: str) -> Iterator[None]:
        """Track runtime for one pipeline stage."""
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            logger.debug("stage %s took %.4fs", stage_name, elapsed)
            with self._lock:
                self.stats.stage_timings[stage_name] = (
                    self.stats.stage_timings.get(stage_name, 0.0) + elapsed
                )

    def snapshot(self) -> dict[str, object]:
        with self._lock:
            return {
                "total_runs": self.stats.total_runs,
                "success_rate": self.stats.success_rate,
                "failed_runs": self.stats.failed_runs,
                "total_runtime_seconds": self.stats.total_runtime_seconds,
                "last_error": self.stats.last_error,
                "stage_timings": dict(self.stats.stage_timings),
            }
