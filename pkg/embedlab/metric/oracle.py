"""Breadth-first-search oracle on the edge relation of M.

Edges: root -- k for every integer k, and k -- A whenever k is in A. On an
(N_0, rho) truncation only the root--k edges exist, whose BFS metric is rho.
Independent of the closed-form table in :mod:`builder`.
"""

from __future__ import annotations

import networkx as nx
import numpy as np

from .models import PointM, TruncatedSpace


def edge_graph(space: TruncatedSpace) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(space.points)
    root = PointM.root()
    integers = [p for p in space.points if p.is_integer]
    if root in space:
        graph.add_edges_from((root, k) for k in integers)
    for point in space.points:
        if point.is_set:
            graph.add_edges_from(
                (PointM.integer(e), point) for e in point.elements if PointM.integer(e) in space
            )
    return graph


def bfs_distance(
    space: TruncatedSpace, x: PointM, y: PointM, graph: nx.Graph | None = None
) -> int:
    """Shortest path length between x and y; raises MembershipError off-space."""
    space.index_of(x)
    space.index_of(y)
    if graph is None:
        graph = edge_graph(space)
    return nx.shortest_path_length(graph, x, y)


def bfs_table(space: TruncatedSpace) -> np.ndarray:
    """All-pairs BFS distances in the space's point order (-1 where unreachable)."""
    graph = edge_graph(space)
    size = len(space)
    table = np.full((size, size), -1, dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(graph):
        i = space.index_of(source)
        for target, length in lengths.items():
            table[i, space.index_of(target)] = length
    return table
