import numpy as np
import pytest

from attachpy.distributions.distributions import build_distribution, build_geometric
from attachpy.inversion.closed_form import closed_form_f
from attachpy.inversion.conditions import BOUNDED, DIVERGING, check_conditions
from attachpy.inversion.inversion import AttachmentFunction, invert

FIG2 = {"alpha1": 2.1, "alpha2": 4.0, "b1": 1.0, "b2": 1.0, "d": 100}


@pytest.mark.parametrize(
    "family, params, expected",
    [
        ("chung_lu", {"alpha": 3, "b": 0}, DIVERGING),
        ("power_law", {"alpha": 2.5}, DIVERGING),
        ("broken_power_law", FIG2, DIVERGING),
        ("geometric", {"q": 0.5}, BOUNDED),
        ("poisson", {"lam": 2}, BOUNDED),
    ],
)
def test_tail_class(family, params, expected):
    dist = build_distribution(family, d_max=10**5, **params)
    report = check_conditions(invert(dist), dist)
    assert report.tail_class == expected
    assert report.validity_branch == expected
    assert report.sum_identity_residual < 1e-8


def test_linear_increments():
    report = check_conditions(closed_form_f("chung_lu", {"alpha": 3, "b": 0}, d_max=1000))
    assert report.k_bound == 0.5
    assert report.bounded_increments
    assert report.sum_identity_residual is None


def test_bounded_validity_sum():
    report = check_conditions(AttachmentFunction(np.ones(60)))
    assert report.tail_class == BOUNDED
    # c = 1 gives terms 2^-(i-1)
    np.testing.assert_allclose(report.validity_sum, 2 * (1 - 0.5**60), rtol=1e-12)


def test_diverging_validity_sum():
    values = np.arange(1, 1001, dtype=float)
    report = check_conditions(AttachmentFunction(values))
    assert report.tail_class == DIVERGING
    expected = np.sum(np.exp(-np.cumsum(1 / values)))
    np.testing.assert_allclose(report.validity_sum, expected, rtol=1e-12)


def test_zero_head():
    values = np.zeros(100)
    values[50:] = 1.0
    report = check_conditions(AttachmentFunction(values))
    assert report.head_median == 0.0
    assert report.ratio == np.inf
    assert report.tail_class == DIVERGING
    assert report.validity_sum == 0.0


def test_ratio_threshold():
    f = invert(build_geometric(0.5, d_max=60))
    assert check_conditions(f, ratio_threshold=0.5).tail_class == DIVERGING
