"""High-level application facade for porebench."""

from __future__ import annotations

import asyncio
import logging
from collections.abc import AsyncIterator, Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from porebench.closure.models import ModelFactory, build_model_registry
from porebench.config import BenchConfig
from porebench.core.models import StageEvent
from porebench.core.registry import Registry
from porebench.core.tracking import RunTracker
from porebench.exceptions import PoreBenchError
from porebench.geometry import BaseGenerator, build_generator_registry
from porebench.geometry.image import DEFAULT_RESOLUTION, GeneratorSpec, PoreImage
from porebench.geometry.raster import read_raster
from porebench.logging_config import setup_logging
from porebench.metrics.report import METRIC_STAGES, MetricArtifacts, MetricsReport, new_state
from porebench.preprocess import check_periodic_connectivity, keep_largest_component

COMPLETE = "complete"


@dataclass(slots=True)
class AnalysisResult:
    """Outcome of one analysis run; ``image`` is the geometry the metrics saw."""

    image: PoreImage
    preprocess: dict[str, Any]
    report: MetricsReport
    artifacts: MetricArtifacts = field(default_factory=MetricArtifacts)

    def to_dict(self) -> dict[str, Any]:
        return {"preprocess": dict(self.preprocess), "metrics": self.report.to_dict()}


@dataclass(slots=True)
class BatchItem:
    path: Path
    result: AnalysisResult | None = None
    error: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


class PoreBench:
    """Facade over generation, preprocessing and the metric pipeline."""

    def __init__(self, config: BenchConfig | None = None) -> None:
        self.config = config or BenchConfig.from_env()
        setup_logging(self.config.log_level)
        self._logger = logging.getLogger(self.__class__.__name__)

        self.options = self.config.metrics_options()
        self.generators: Registry[BaseGenerator] = build_generator_registry()
        self.models: Registry[ModelFactory] = build_model_registry()
        self.tracker = RunTracker()

    def generate(
        self,
        spec: GeneratorSpec,
        width: int = DEFAULT_RESOLUTION,
        height: int = DEFAULT_RESOLUTION,
    ) -> PoreImage:
        """Build a geometry with the registered generator for ``spec.kind``."""
        return self.generators.get(spec.kind.value).generate(spec, width, height)

    def _preprocess(self, image: PoreImage, clean: bool) -> tuple[PoreImage, dict[str, Any]]:
        report = check_periodic_connectivity(image, self.options.discontinuity_threshold)
        summary: dict[str, Any] = {"cleaned": clean, "removed_pixels": 0, **report.to_dict()}
        if clean and image.void_count:
            cleaned = keep_largest_component(image)
            summary["removed_pixels"] = image.void_count - cleaned.void_count
            image = cleaned
        return image, summary

    def iter_analysis(self, image: PoreImage, clean: bool = False) -> Iterator[StageEvent]:
        """Synchronous pipeline; the last event carries the ``AnalysisResult``."""
        started = self.tracker.start_run()
        success = False
        error: str | None = None
        try:
            with self.tracker.stage("preprocess"):
                image, summary = self._preprocess(image, clean)
            yield StageEvent(stage="preprocess", message="Checked periodic connectivity", payload=summary)

            state = new_state(image, self.options)
            for stage in METRIC_STAGES:
                with self.tracker.stage(stage.name):
                    payload = stage.run(state)
                yield StageEvent(stage=stage.name, message=f"Computed {stage.name}", payload=payload)

            result = AnalysisResult(image, summary, state.report, state.artifacts)
            success = True
            yield StageEvent(stage=COMPLETE, message="Analysis complete", payload={"result": result})
        except PoreBenchError as exc:
            error = str(exc)
            raise
        finally:
            self.tracker.end_run(started, success, error)

    async def stream_analysis(self, image: PoreImage, clean: bool = False) -> AsyncIterator[StageEvent]:
        """Stream stage events; each stage runs in a worker thread."""
        events = self.iter_analysis(image, clean)
        while True:
            event = await asyncio.to_thread(next, events, None)
            if event is None:
                return
            yield event

    async def analyze(self, image: PoreImage, clean: bool = False) -> AnalysisResult:
        """Run the pipeline and collect the final result."""
        result: AnalysisResult | None = None
        async for event in self.stream_analysis(image, clean):
            if event.stage == COMPLETE:
                result = event.payload["result"]
        assert result is not None
        return result

    def analyze_path(self, path: Path, clean: bool = False) -> AnalysisResult:
        """Read and analyze one geometry file in the calling thread."""
        image = read_raster(path)
        result: AnalysisResult | None = None
        for event in self.iter_analysis(image, clean):
            if event.stage == COMPLETE:
                result = event.payload["result"]
        assert result is not None
        return result

    async def analyze_batch(self, paths: Sequence[Path], clean: bool = False) -> list[BatchItem]:
        """One worker thread per file, at most ``config.threads`` at a time."""
        gate = asyncio.Semaphore(max(1, self.config.threads))

        async def run_one(path: Path) -> BatchItem:
            async with gate:
                try:
                    result = await asyncio.to_thread(self.analyze_path, path, clean)
                except (PoreBenchError, OSError) as exc:
                    self._logger.warning("Analysis of %s failed: %s", path, exc)
                    payload = exc.to_dict() if isinstance(exc, PoreBenchError) else {
                        "code": "IOError",
                        "message": str(exc),
                    }
                    return BatchItem(path=path, error=payload)
                return BatchItem(path=path, result=result)

        return list(await asyncio.gather(*(run_one(path) for path in paths)))

    def stats_snapshot(self) -> dict[str, Any]:
        """Run counters and cumulative per-stage timings."""
        return self.tracker.snapshot()


def create_default_bench(config: BenchConfig | None = None) -> PoreBench:
    """Factory helper to create a fully configured bench instance."""
    return PoreBench(config=config)
