import numpy as np
import pandas as pd
import pytest

from attachpy.analysis.analysis import (
    compare,
    empirical_dd,
    fit_tail_slope,
    plot_data,
    spike_fidelity,
)
from attachpy.distributions.distributions import (
    DegreeDistribution,
    boost,
    build_broken_power_law,
    build_exact_power_law,
    build_geometric,
)
from attachpy.distributions.empirical import RawHistogram
from attachpy.exceptions import FitError, InvalidParameterError
from attachpy.simulator.graph import GrowthGraph


def test_empirical_dd_from_graph():
    graph = GrowthGraph.from_edges([(0, 1), (1, 2), (1, 3)])
    dist = empirical_dd(graph)
    np.testing.assert_allclose(dist.pmf, [0.75, 0.0, 0.25])
    assert dist.source == "realized"
    assert dist.parameters == {"nodes": 4.0}
    np.testing.assert_array_equal(dist.zero_mass_degrees, [2])


def test_empirical_dd_from_histogram():
    dist = empirical_dd(RawHistogram({1: 3, 3: 1}))
    np.testing.assert_allclose(dist.pmf, [0.75, 0.0, 0.25])


def test_compare_disjoint():
    result = compare(DegreeDistribution([1.0, 0.0]), DegreeDistribution([0.0, 1.0]))
    assert result.tv_distance == 1.0
    assert result.support_mismatch == 2.0
    assert result.max_pointwise_log_ratio == 0.0


def test_compare():
    result = compare(DegreeDistribution([0.5, 0.5]), DegreeDistribution([0.75, 0.25]))
    np.testing.assert_allclose(result.tv_distance, 0.25)
    np.testing.assert_allclose(result.max_pointwise_log_ratio, np.log(2))
    assert result.support_mismatch == 0.0


def test_compare_different_supports():
    result = compare(DegreeDistribution([0.5, 0.5]), DegreeDistribution([0.5, 0.25, 0.25]))
    np.testing.assert_allclose(result.tv_distance, 0.25)
    np.testing.assert_allclose(result.support_mismatch, 0.25)


def test_compare_identical():
    dist = build_geometric(0.5, d_max=30)
    result = compare(dist, dist)
    assert result.tv_distance == 0.0
    assert result.max_pointwise_log_ratio == 0.0


def test_fit_power_law():
    fit = fit_tail_slope(build_exact_power_law(3, d_max=10**5), 10, 1000)
    assert abs(fit.slope - 1.992) < 0.02
    assert fit.r_squared > 0.99
    assert fit.n_points == 991
    assert fit.fit_range == (10, 1000)
    np.testing.assert_allclose(fit.pmf_exponent, fit.slope + 1)


def test_fit_broken_power_law_tail():
    dist = build_broken_power_law(2.1, 4.0, 1.0, 1.0, 100, d_max=10**5)
    fit = fit_tail_slope(dist, 200, 5000)
    assert abs(fit.slope - 2.99) < 0.1


def test_fit_light_tail():
    fit = fit_tail_slope(build_geometric(0.5, d_max=60), 5, 30)
    assert fit.r_squared > 0.8


def test_fit_errors():
    dist = build_geometric(0.5, d_max=60)
    with pytest.raises(FitError):
        fit_tail_slope(dist, 57, 60)
    with pytest.raises(InvalidParameterError):
        fit_tail_slope(dist, 10, 61)
    with pytest.raises(InvalidParameterError):
        fit_tail_slope(dist, 10, 10)


def test_spike_fidelity():
    target = boost(build_exact_power_law(2.5, d_max=1000), 20, 5.0)
    smooth = build_exact_power_law(2.5, d_max=1000)
    reports = spike_fidelity(target, target, [20])
    assert reports[0].ratio == pytest.approx(1.0)
    assert not reports[0].flagged
    assert reports[0].target_ratio == pytest.approx(5.0, rel=0.05)
    reports = spike_fidelity(target, smooth, [20])
    assert reports[0].ratio == pytest.approx(0.2, rel=0.01)
    assert reports[0].flagged


def test_spike_fidelity_missing_degree():
    target = boost(build_geometric(0.5, d_max=60), 20, 5.0)
    realized = DegreeDistribution([0.5, 0.5])
    reports = spike_fidelity(target, realized, [20])
    assert reports[0].realized_ratio == 0.0
    assert reports[0].flagged
    with pytest.raises(InvalidParameterError):
        spike_fidelity(target, realized, [20], window=0)


def test_plot_data():
    dist = build_geometric(0.5, d_max=30)
    df = plot_data(dist)
    assert list(df.columns) == ["degree", "pmf", "ccdf"]
    assert len(df) == 30
    pd.testing.assert_series_equal(df["pmf"], pd.Series(dist.pmf, name="pmf"))


def test_plot_data_log_binning():
    dist = build_exact_power_law(2.5, d_max=1000)
    df = plot_data(dist, log_binning=True)
    assert list(df.columns) == ["degree", "pmf", "ccdf"]
    assert len(df) < 40
    assert df["degree"].is_monotonic_increasing
    np.testing.assert_allclose(df["pmf"].iloc[0], dist.pmf[0])
    assert df["ccdf"].iloc[-1] == 0.0


def _fixed_support_distributions():
    rng = np.random.default_rng(3)
    dists = [build_geometric(q, d_max=50) for q in [0.2, 0.5, 0.8]]
    dists += [build_exact_power_law(alpha, d_max=50) for alpha in [2.2, 3.5]]
    dists += [DegreeDistribution.from_weights(rng.random(50) + 1e-3, source="random") for _ in range(3)]
    return dists


def test_compare_is_symmetric():
    dists = _fixed_support_distributions()
    for a in dists:
        for b in dists:
            forward, backward = compare(a, b), compare(b, a)
            assert forward.tv_distance == pytest.approx(backward.tv_distance, abs=1e-15)
            assert forward.max_pointwise_log_ratio == pytest.approx(backward.max_pointwise_log_ratio, abs=1e-12)
            assert forward.support_mismatch == pytest.approx(backward.support_mismatch, abs=1e-15)


def test_compare_triangle_inequality():
    dists = _fixed_support_distributions()
    for a in dists:
        assert compare(a, a).tv_distance == 0.0
        for b in dists:
            for c in dists:
                assert compare(a, c).tv_distance <= compare(a, b).tv_distance + compare(b, c).tv_distance + 1e-12
