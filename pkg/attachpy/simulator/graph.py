from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional, Tuple

import networkx as nx
import numpy as np

from attachpy.exceptions import InvalidParameterError


@dataclass(frozen=True, eq=False)
class GrowthGraph:
    """
    Multigraph produced by the growth model. Node ids are dense integers in creation order.

    Args:
        edges: integer array of shape (n_edges, 2), in creation order
        degree: degree per node id
        degree_counts: number of nodes per degree, indexed by degree (position 0 is always 0)
        diagnostics: counters of the run that produced the graph
    """

    edges: np.ndarray
    degree: np.ndarray
    degree_counts: np.ndarray
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Tuple[int, int]],
        node_count: Optional[int] = None,
        diagnostics: Optional[Dict[str, Any]] = None,
    ) -> "GrowthGraph":
        """
        Build a graph from an edge list; a self-loop adds 2 to the degree of its node.

        Args:
            edges: (u, v) pairs of 0-based node ids
            node_count: number of nodes, defaults to the largest id + 1
            diagnostics: optional run counters

        Returns:
            growth graph
        """
        if not isinstance(edges, np.ndarray):
            edges = list(edges)
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(edges) and edges.min() < 0:
            raise InvalidParameterError("node ids must be non-negative")
        if node_count is None:
            node_count = int(edges.max()) + 1 if len(edges) else 0
        degree = np.bincount(edges.ravel(), minlength=node_count)
        if len(degree) > node_count:
            raise InvalidParameterError(f"edge endpoints exceed node_count={node_count}")
        degree_counts = np.bincount(degree, minlength=1) if node_count else np.zeros(1, dtype=np.int64)
        degree_counts[0] = 0
        return cls(edges, degree, degree_counts, diagnostics=dict(diagnostics or {}))

    @property
    def node_count(self) -> int:
        return len(self.degree)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return len(self.degree_counts) - 1

    @property
    def mean_degree(self) -> float:
        return 2.0 * self.edge_count / self.node_count

    @property
    def edges_per_node(self) -> float:
        return self.edge_count / self.node_count

    def check_invariants(self) -> None:
        """
        Raise if node and degree bookkeeping disagree with the edge list.
        """
        if (self.degree < 1).any():
            node = int(np.flatnonzero(self.degree < 1)[0])
            raise InvalidParameterError(f"node {node} has degree {self.degree[node]}")
        if int(self.degree_counts.sum()) != self.node_count:
            raise InvalidParameterError("degree counts do not sum to the number of nodes")
        degree_sum = int(np.dot(np.arange(len(self.degree_counts)), self.degree_counts))
        if degree_sum != 2 * self.edge_count:
            raise InvalidParameterError(f"degree sum {degree_sum} differs from twice the edge count")

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from(self.edges.tolist())
        return graph
