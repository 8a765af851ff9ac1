import numpy as np
import pytest

from attachpy.exceptions import InvalidParameterError
from attachpy.simulator.fenwick import FenwickTree


def _tree(values):
    tree = FenwickTree(len(values))
    for index, value in enumerate(values, start=1):
        tree.increment(index, value)
    return tree


def test_prefix_sums():
    values = np.random.default_rng(0).random(37)
    tree = _tree(values)
    expected = np.cumsum(values)
    for index in range(1, 38):
        np.testing.assert_allclose(tree.prefix_sum(index), expected[index - 1], rtol=1e-12)
    np.testing.assert_allclose(tree.total, values.sum(), rtol=1e-12)
    assert tree.prefix_sum(0) == 0.0


def test_find():
    tree = _tree([1.0, 2.0, 3.0, 4.0, 5.0])
    assert tree.find(0.0) == (1, 0.0)
    assert tree.find(1.0) == (2, 0.0)
    index, residual = tree.find(2.5)
    assert index == 2
    np.testing.assert_allclose(residual, 1.5)
    index, residual = tree.find(14.5)
    assert index == 5
    np.testing.assert_allclose(residual, 4.5)
    assert tree.find(15.0)[0] == 6


def test_find_skips_zero_weights():
    tree = _tree([0.0, 0.0, 2.0, 0.0, 1.0])
    assert tree.find(0.0)[0] == 3
    assert tree.find(1.999)[0] == 3
    assert tree.find(2.0)[0] == 5


def test_set_value():
    tree = _tree([1.0, 2.0, 3.0])
    tree.set_value(2, 0.5)
    assert tree[2] == 0.5
    assert tree.total == 4.5


def test_rebuild_matches_increments():
    values = np.random.default_rng(1).random(100)
    incremental = _tree(values)
    rebuilt = FenwickTree(1)
    rebuilt.rebuild(values.tolist())
    assert rebuilt.capacity == 100
    for index in range(1, 101):
        np.testing.assert_allclose(rebuilt.prefix_sum(index), incremental.prefix_sum(index), rtol=1e-12)


def test_grow():
    tree = _tree([1.0, 2.0, 3.0, 4.0, 5.0])
    tree.grow(12)
    assert tree.capacity == 12
    assert len(tree) == 12
    assert tree.total == 15.0
    tree.increment(12, 1.0)
    assert tree.total == 16.0
    assert tree.find(15.5)[0] == 12
    tree.grow(3)
    assert tree.capacity == 12


def test_errors():
    with pytest.raises(InvalidParameterError):
        FenwickTree(0)
    with pytest.raises(InvalidParameterError):
        FenwickTree(3).rebuild([])
