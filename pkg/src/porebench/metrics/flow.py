"""Maximum flow across the cell and the matching minimum cut."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
from networkx.algorithms.flow import edmonds_karp

from porebench.exceptions import DegenerateAxisError, NoBoundaryVoidError
from porebench.geometry.image import PoreImage
from porebench.metrics.graph import EDGE_CAPACITY, PoreGraph, build_graph

logger = logging.getLogger(__name__)

SOURCE = "source"
SINK = "sink"


@dataclass(frozen=True, slots=True, eq=False)
class FlowResult:
    """Flow value plus the saturated edges of one minimum cut.

    ``cut_edges`` holds ``(row, col, row, col)`` pixel pairs; ``cut_mask`` marks
    the pixels touching a cut edge.
    """

    axis: str
    value: int
    cut_edges: np.ndarray
    cut_mask: np.ndarray


def _faces(image: PoreImage, axis: str) -> tuple[np.ndarray, np.ndarray]:
    cells = image.cells
    if axis == "x":
        extent, low, high = image.width, cells[:, 0], cells[:, -1]
    elif axis == "y":
        extent, low, high = image.height, cells[0, :], cells[-1, :]
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if extent < 2:
        raise DegenerateAxisError(f"axis {axis} is a single pixel wide")
    if not low.any() or not high.any():
        raise NoBoundaryVoidError(f"a boundary face of axis {axis} has no void pixel")
    return low, high


def _flow_network(graph: PoreGraph, image: PoreImage, axis: str) -> nx.DiGraph:
    network = nx.DiGraph()
    network.add_nodes_from(range(graph.n_nodes))
    for u, v in graph.edges:
        network.add_edge(int(u), int(v), capacity=EDGE_CAPACITY)
        network.add_edge(int(v), int(u), capacity=EDGE_CAPACITY)

    ids = graph.node_ids
    low_ids = ids[:, 0] if axis == "x" else ids[0, :]
    high_ids = ids[:, -1] if axis == "x" else ids[-1, :]
    # no capacity attribute means unbounded in networkx
    network.add_edges_from((SOURCE, int(node)) for node in low_ids[low_ids >= 0])
    network.add_edges_from((int(node), SINK) for node in high_ids[high_ids >= 0])
    return network


def max_flow_cut(image: PoreImage, axis: str = "x") -> FlowResult:
    """Edmonds-Karp max flow between the two faces of ``axis``.

    Only the off-axis boundary wraps; source and sink edges are unbounded, so
    every cut edge lies inside the geometry.
    """
    _faces(image, axis)
    graph = build_graph(
        image,
        periodic_x=image.periodic_x and axis == "y",
        periodic_y=image.periodic_y and axis == "x",
    )
    network = _flow_network(graph, image, axis)
    cut_value, (side, _) = nx.minimum_cut(network, SOURCE, SINK, flow_func=edmonds_karp)
    value = int(round(cut_value))

    in_source = np.array([node in side for node in range(graph.n_nodes)], dtype=bool)
    crossing = in_source[graph.edges[:, 0]] != in_source[graph.edges[:, 1]]
    cut = graph.edges[crossing]

    cut_edges = np.column_stack([graph.coords[cut[:, 0]], graph.coords[cut[:, 1]]])
    cut_mask = np.zeros(image.cells.shape, dtype=bool)
    for endpoint in (cut[:, 0], cut[:, 1]):
        rows, cols = graph.coords[endpoint].T
        cut_mask[rows, cols] = True
    logger.debug("Axis %s: max flow %d, %d cut edges", axis, value, len(cut))
    return FlowResult(axis=axis, value=value, cut_edges=cut_edges.reshape(-1, 4), cut_mask=cut_mask)


def max_flow(image: PoreImage, axis: str = "x") -> int:
    """Integer max-flow value across ``axis`` in unit edge capacities."""
    return max_flow_cut(image, axis).value
