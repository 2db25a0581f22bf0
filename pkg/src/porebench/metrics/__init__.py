"""Descriptive pore-scale metrics."""

from porebench.metrics.flow import FlowResult, max_flow, max_flow_cut
from porebench.metrics.graph import PoreGraph, build_graph, connectivity
from porebench.metrics.options import DirectionalityNorm, MetricsOptions
from porebench.metrics.paths import TortuosityResult, tortuosity, tortuosity_paths
from porebench.metrics.pores import (
    PoreSizeDistribution,
    distance_map,
    porosity,
    pore_size_distribution,
)
from porebench.metrics.report import (
    METRIC_STAGES,
    MetricArtifacts,
    MetricsReport,
    MetricStage,
    MetricState,
    compute_metrics,
    new_state,
)
from porebench.metrics.surface import DIRECTIONS, SurfaceMetrics, surface_metrics

__all__ = [
    "DIRECTIONS",
    "METRIC_STAGES",
    "DirectionalityNorm",
    "FlowResult",
    "MetricArtifacts",
    "MetricStage",
    "MetricState",
    "MetricsOptions",
    "MetricsReport",
    "PoreGraph",
    "PoreSizeDistribution",
    "SurfaceMetrics",
    "TortuosityResult",
    "build_graph",
    "compute_metrics",
    "connectivity",
    "distance_map",
    "max_flow",
    "max_flow_cut",
    "new_state",
    "porosity",
    "pore_size_distribution",
    "surface_metrics",
    "tortuosity",
    "tortuosity_paths",
]
