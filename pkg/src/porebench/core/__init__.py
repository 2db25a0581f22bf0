"""Core framework primitives."""

from porebench.core.models import RunStats, StageEvent
from porebench.core.registry import Registry
from porebench.core.tracking import RunTracker

__all__ = [
    "Registry",
    "RunStats",
    "RunTracker",
    "StageEvent",
]
