"""networkx helpers for the unlabelled shape of a generalized Dynkin diagram."""

from __future__ import annotations

from typing import TYPE_CHECKING

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from ..models.diagram import DynkinDiagram


def diagram_graph(diagram: DynkinDiagram) -> nx.Graph:
    """Graph on vertices ``0..d-1`` with an edge wherever the edge label is not 1."""
    graph = nx.Graph()
    graph.add_nodes_from(range(diagram.dim))
    graph.add_edges_from((i, j) for i, j, _ in diagram.edge_list())
    return graph


def is_connected_graph(graph: nx.Graph) -> bool:
    return graph.number_of_nodes() <= 1 or nx.is_connected(graph)


def component_sets(d: int, adjacency: Iterable[tuple[int, int]]) -> list[set[int]]:
    """Connected components of the graph on ``0..d-1``, ordered by smallest vertex."""
    graph = nx.Graph()
    graph.add_nodes_from(range(d))
    graph.add_edges_from(adjacency)
    return sorted((set(c) for c in nx.connected_components(graph)), key=min)


def path_order(graph: nx.Graph) -> list[int] | None:
    """Vertices along the path if the graph is a path graph, else None.

    The walk starts at the smaller endpoint.
    """
    n = graph.number_of_nodes()
    if n == 1:
        return list(graph.nodes)
    if graph.number_of_edges() != n - 1 or not nx.is_connected(graph):
        return None
    if any(degree > 2 for _, degree in graph.degree()):
        return None
    start = min(v for v, degree in graph.degree() if degree == 1)
    order = [start]
    previous = None
    while len(order) < n:
        current = order[-1]
        following = [w for w in graph.neighbors(current) if w != previous]
        previous = current
        order.append(following[0])
    return order


def has_long_cycle(graph: nx.Graph, length: int = 4) -> bool:
    """Whether some cycle (not necessarily induced) has at least ``length`` vertices.

    A biconnected block on at least four vertices always carries such a cycle.
    """
    return any(len(block) >= length for block in nx.biconnected_components(graph))


def induced_matches(graph: nx.Graph, pattern: nx.Graph) -> Iterator[dict[int, int]]:
    """Yield maps ``pattern vertex -> graph vertex`` for induced copies of ``pattern``.

    Every automorphic image is yielded separately.
    """
    matcher = GraphMatcher(graph, pattern)
    for mapping in matcher.subgraph_isomorphisms_iter():
        yield {p: g for g, p in mapping.items()}


def shape(edges: Iterable[tuple[int, int]], nodes: int | None = None) -> nx.Graph:
    """Small pattern graph from an edge list on vertices ``0..nodes-1``."""
    graph = nx.Graph()
    edge_list = list(edges)
    count = nodes if nodes is not None else 1 + max(max(e) for e in edge_list)
    graph.add_nodes_from(range(count))
    graph.add_edges_from(edge_list)
    return graph
