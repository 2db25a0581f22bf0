"""Metric pipeline: ordered stages filling one MetricsReport."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from porebench.exceptions import (
    DegenerateAxisError,
    NoBoundaryVoidError,
    NoCrossingPathError,
    NoVoidSpaceError,
)
from porebench.geometry.image import PoreImage
from porebench.metrics.flow import FlowResult, max_flow_cut
from porebench.metrics.graph import build_graph, connectivity
from porebench.metrics.options import MetricsOptions
from porebench.metrics.paths import TortuosityResult, tortuosity_paths
from porebench.metrics.pores import PoreSizeDistribution, porosity, pore_size_distribution
from porebench.metrics.surface import surface_metrics

logger = logging.getLogger(__name__)

AXES = ("x", "y")


@dataclass(slots=True)
class MetricsReport:
    """All descriptive metrics of one geometry.

    Tortuosity is ``None`` on an axis without a crossing void path; max flow is
    ``None`` on an axis only one pixel wide.

    ``directionality`` divides each bin count by the boundary pixels that have
    a nonzero normal (``DirectionalityNorm.DIRECTIONAL``). With
    ``MetricsOptions.directionality_norm`` set to ``ALL`` it divides by every
    boundary pixel instead, slit pixels included.
    """

    porosity: float = 0.0
    n_pores: int = 0
    mean_pore_size: float = 0.0
    std_pore_size: float = 0.0
    specific_surface: float = 0.0
    directionality: tuple[float, ...] = (0.0,) * 8
    directionality_std: float = 0.0
    connectivity: int = 0
    tortuosity: dict[str, float | None] = field(default_factory=lambda: dict.fromkeys(AXES))
    max_flow: dict[str, int | None] = field(default_factory=lambda: dict.fromkeys(AXES))

    def to_dict(self) -> dict[str, Any]:
        return {
            "porosity": self.porosity,
            "n_pores": self.n_pores,
            "mu_p": self.mean_pore_size,
            "sigma_p": self.std_pore_size,
            "S": self.specific_surface,
            "Di": list(self.directionality),
            "sigma_Di": self.directionality_std,
            "connectivity": self.connectivity,
            "tau": dict(self.tortuosity),
            "f_max": dict(self.max_flow),
        }


@dataclass(slots=True)
class MetricArtifacts:
    """Intermediate results kept for debug rasters."""

    pores: PoreSizeDistribution | None = None
    paths: dict[str, TortuosityResult] = field(default_factory=dict)
    cuts: dict[str, FlowResult] = field(default_factory=dict)


@dataclass(slots=True)
class MetricState:
    image: PoreImage
    options: MetricsOptions
    report: MetricsReport = field(default_factory=MetricsReport)
    artifacts: MetricArtifacts = field(default_factory=MetricArtifacts)


@dataclass(frozen=True, slots=True)
class MetricStage:
    """One named step; ``run`` fills the state and returns an event payload."""

    name: str
    run: Callable[[MetricState], dict[str, Any]]


def _porosity(state: MetricState) -> dict[str, Any]:
    state.report.porosity = porosity(state.image)
    return {"porosity": state.report.porosity}


def _pores(state: MetricState) -> dict[str, Any]:
    distribution = pore_size_distribution(state.image, state.options.smoothing_radius)
    state.artifacts.pores = distribution
    state.report.n_pores = distribution.n_pores
    state.report.mean_pore_size = distribution.mean
    state.report.std_pore_size = distribution.std
    return {"n_pores": distribution.n_pores, "mu_p": distribution.mean, "sigma_p": distribution.std}


def _surface(state: MetricState) -> dict[str, Any]:
    surface = surface_metrics(state.image, state.options.directionality_norm)
    state.report.specific_surface = surface.specific_surface
    state.report.directionality = surface.directionality
    state.report.directionality_std = surface.directionality_std
    return {"S": surface.specific_surface, "Di": list(surface.directionality)}


def _connectivity(state: MetricState) -> dict[str, Any]:
    state.report.connectivity = connectivity(build_graph(state.image))
    return {"connectivity": state.report.connectivity}


def _tortuosity(state: MetricState) -> dict[str, Any]:
    for axis in AXES:
        try:
            result = tortuosity_paths(state.image, axis, state.options.tortuosity_sources)
        except NoCrossingPathError as exc:
            logger.warning("Tortuosity undefined along %s: %s", axis, exc)
            state.report.tortuosity[axis] = None
            continue
        state.artifacts.paths[axis] = result
        state.report.tortuosity[axis] = result.tau
    return {"tau": dict(state.report.tortuosity)}


def _max_flow(state: MetricState) -> dict[str, Any]:
    for axis in AXES:
        try:
            result = max_flow_cut(state.image, axis)
        except NoBoundaryVoidError:
            state.report.max_flow[axis] = 0
            continue
        except DegenerateAxisError as exc:
            logger.warning("Max flow undefined along %s: %s", axis, exc)
            state.report.max_flow[axis] = None
            continue
        state.artifacts.cuts[axis] = result
        state.report.max_flow[axis] = result.value
    return {"f_max": dict(state.report.max_flow)}


METRIC_STAGES: tuple[MetricStage, ...] = (
    MetricStage("porosity", _porosity),
    MetricStage("pore_size_distribution", _pores),
    MetricStage("surface", _surface),
    MetricStage("connectivity", _connectivity),
    MetricStage("tortuosity", _tortuosity),
    MetricStage("max_flow", _max_flow),
)


def new_state(image: PoreImage, options: MetricsOptions | None = None) -> MetricState:
    """Fresh pipeline state; rejects geometries without void space."""
    if image.void_count == 0:
        raise NoVoidSpaceError("geometry has no void pixels")
    return MetricState(image=image, options=options or MetricsOptions())


def compute_metrics(image: PoreImage, options: MetricsOptions | None = None) -> MetricsReport:
    """Run every metric stage in order."""
    state = new_state(image, options)
    for stage in METRIC_STAGES:
        stage.run(state)
    return state.report
