"""Pore graph: one node per void pixel, unit-capacity edges between 4-neighbors."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from porebench.exceptions import NoVoidSpaceError
from porebench.geometry.image import PoreImage

EDGE_CAPACITY = 1


@dataclass(frozen=True, slots=True, eq=False)
class PoreGraph:
    """Undirected pore graph.

    ``node_ids`` maps each pixel to its node id (-1 on solid), ``coords`` holds
    the ``(row, col)`` of every node and ``edges`` the endpoint pairs. Wrap edges
    are only added across boundaries with more than two pixels, where they do not
    duplicate an interior edge.
    """

    node_ids: np.ndarray
    coords: np.ndarray
    edges: np.ndarray
    node_volume: float
    periodic_x: bool
    periodic_y: bool

    @property
    def n_nodes(self) -> int:
        return int(len(self.coords))

    @property
    def n_edges(self) -> int:
        return int(len(self.edges))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_nodes))
        graph.add_edges_from(
            (int(u), int(v), {"capacity": EDGE_CAPACITY}) for u, v in self.edges
        )
        return graph


def grid_edges(
    cells: np.ndarray, wrap_x: bool, wrap_y: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Pixel pairs ``(flat_a, flat_b)`` of 4-adjacent void pixels.

    Horizontal pairs come first, each stepping +x; vertical pairs step +y (down a row).
    """
    height, width = cells.shape
    flat = np.arange(cells.size).reshape(height, width)
    pairs_a: list[np.ndarray] = []
    pairs_b: list[np.ndarray] = []

    def add(a_idx: np.ndarray, b_idx: np.ndarray, mask: np.ndarray) -> None:
        pairs_a.append(a_idx[mask])
        pairs_b.append(b_idx[mask])

    add(flat[:, :-1], flat[:, 1:], cells[:, :-1] & cells[:, 1:])
    if wrap_x and width > 2:
        add(flat[:, -1], flat[:, 0], cells[:, -1] & cells[:, 0])
    add(flat[:-1, :], flat[1:, :], cells[:-1, :] & cells[1:, :])
    if wrap_y and height > 2:
        add(flat[-1, :], flat[0, :], cells[-1, :] & cells[0, :])
    return np.concatenate(pairs_a), np.concatenate(pairs_b)


def build_graph(
    image: PoreImage,
    periodic_x: bool | None = None,
    periodic_y: bool | None = None,
) -> PoreGraph:
    """Nodes for void pixels; unit edges between 4-neighbors and across periodic boundaries."""
    if image.void_count == 0:
        raise NoVoidSpaceError("cannot build a pore graph without void pixels")
    wrap_x = image.periodic_x if periodic_x is None else periodic_x
    wrap_y = image.periodic_y if periodic_y is None else periodic_y

    cells = image.cells
    node_ids = np.full(cells.shape, -1, dtype=np.int64)
    node_ids[cells] = np.arange(image.void_count)
    coords = np.argwhere(cells)

    flat_a, flat_b = grid_edges(cells, wrap_x, wrap_y)
    ids = node_ids.ravel()
    edges = np.column_stack([ids[flat_a], ids[flat_b]])
    return PoreGraph(
        node_ids=node_ids,
        coords=coords,
        edges=edges,
        node_volume=image.pixel_length**2,
        periodic_x=wrap_x,
        periodic_y=wrap_y,
    )


def connectivity(graph: PoreGraph) -> int:
    """Number of traverses needed to visit every node."""
    return nx.number_connected_components(graph.to_networkx())
