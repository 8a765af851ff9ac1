import numpy as np
import pytest

from attachpy.exceptions import InvalidParameterError
from attachpy.simulator.graph import GrowthGraph


def test_from_edges():
    graph = GrowthGraph.from_edges([(0, 1), (1, 2), (1, 1)])
    np.testing.assert_array_equal(graph.degree, [1, 4, 1])
    np.testing.assert_array_equal(graph.degree_counts, [0, 2, 0, 0, 1])
    assert graph.node_count == 3
    assert graph.edge_count == 3
    assert graph.max_degree == 4
    assert graph.mean_degree == 2.0
    assert graph.edges_per_node == 1.0
    graph.check_invariants()


def test_isolated_node():
    graph = GrowthGraph.from_edges([(0, 1)], node_count=3)
    with pytest.raises(InvalidParameterError, match="node 2"):
        graph.check_invariants()


def test_from_edges_errors():
    with pytest.raises(InvalidParameterError):
        GrowthGraph.from_edges([(0, -1)])
    with pytest.raises(InvalidParameterError):
        GrowthGraph.from_edges([(0, 5)], node_count=3)


def test_to_networkx():
    graph = GrowthGraph.from_edges([(0, 1), (0, 1), (1, 1)])
    nx_graph = graph.to_networkx()
    assert nx_graph.number_of_nodes() == 2
    assert nx_graph.number_of_edges() == 3
    assert dict(nx_graph.degree()) == {0: 2, 1: 4}
