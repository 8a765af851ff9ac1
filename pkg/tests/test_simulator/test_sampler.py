import numpy as np
import pytest

from attachpy.exceptions import DomainError
from attachpy.inversion.inversion import AttachmentFunction
from attachpy.simulator.sampler import DegreeClassSampler


def _sampler(degrees, f, **kwargs):
    sampler = DegreeClassSampler(AttachmentFunction(f), **kwargs)
    for node, degree in enumerate(degrees):
        sampler.add_node(node, degree)
    return sampler


def test_sampling_frequencies():
    degrees = [1, 1, 2, 2, 3, 3, 4, 5]
    sampler = _sampler(degrees, np.arange(1, 11, dtype=float))
    n = 10**6
    draws = [sampler.sample(u) for u in np.random.default_rng(0).random(n).tolist()]
    counts = np.bincount(draws, minlength=len(degrees))
    expected = np.array(degrees) / sum(degrees)
    sigma = np.sqrt(n * expected * (1 - expected))
    assert (np.abs(counts - n * expected) < 4 * sigma).all()


@pytest.mark.slow
def test_sampling_frequencies_within_three_sigma():
    degrees = [1, 1, 2, 2, 3, 3, 4, 5]
    sampler = _sampler(degrees, np.arange(1, 11, dtype=float))
    n = 10**6
    expected = np.array(degrees) / sum(degrees)
    sigma = np.sqrt(n * expected * (1 - expected))
    passed = 0
    for seed in range(5):
        draws = [sampler.sample(u) for u in np.random.default_rng(seed).random(n).tolist()]
        counts = np.bincount(draws, minlength=len(degrees))
        passed += (np.abs(counts - n * expected) <= 3 * sigma).all()
    assert passed >= 4


def test_d_max_has_no_weight():
    sampler = _sampler([1, 3], [1.0, 1.0, 5.0])
    assert sampler.weight(3) == 0.0
    assert sampler.total == 1.0
    assert all(sampler.sample(u) == 0 for u in np.linspace(0, 0.999, 50))


def test_move():
    sampler = _sampler([1, 1, 1], [1.0, 2.0, 3.0, 4.0])
    sampler.move(0, 1, 2)
    assert sorted(sampler.buckets[1]) == [1, 2]
    assert sampler.buckets[2] == [0]
    assert sampler.counts[1:3] == [2, 1]
    np.testing.assert_allclose(sampler.class_weights(), [2.0, 2.0, 0.0, 0.0])
    assert sampler.total == 4.0
    sampler.move(2, 1, 3)
    assert sampler.buckets[1] == [1]
    assert sampler.sample(0.0) == 1
    assert sampler.sample(0.999) == 2


def test_capacity_doubles_up_to_d_max():
    sampler = _sampler([1], np.ones(10), initial_capacity=2)
    assert sampler.capacity == 2
    sampler.add_node(1, 5)
    assert sampler.capacity == 8
    sampler.add_node(2, 10)
    assert sampler.capacity == 10
    assert sampler.weight(10) == 0.0
    assert sampler.total == 2.0


def test_degree_above_d_max():
    sampler = _sampler([1], np.ones(4))
    with pytest.raises(DomainError):
        sampler.add_node(1, 5)


def test_rebuild_interval():
    sampler = _sampler([1, 1, 1, 1], np.ones(8), rebuild_interval=3)
    assert sampler.rebuilds == 1
    sampler.move(0, 1, 2)
    assert sampler.rebuilds == 2
    np.testing.assert_allclose(sampler.total, 4.0)
