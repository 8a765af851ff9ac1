from dataclasses import dataclass
from typing import Optional

import numpy as np

from attachpy.config import HEAVY_TAIL_RATIO
from attachpy.distributions.distributions import DegreeDistribution, mean_degree
from attachpy.inversion.inversion import AttachmentFunction

DIVERGING = "diverging"
BOUNDED = "bounded"


@dataclass(frozen=True)
class ConditionReport:
    """
    Diagnostics of an attachment function over its finite support.

    Args:
        k_bound: largest increment |f(i+1) - f(i)|
        bounded_increments: whether k_bound is finite
        validity_sum: partial sum of the convergence condition of the branch in `validity_branch`
        validity_branch: 'bounded' (geometric decay bound with c = max f) or 'diverging' (exp(-sum 1/f))
        tail_class: 'diverging' or 'bounded', from the median heuristic
        head_median: median of f over degrees 1..min(10, d_max)
        tail_median: median of f over the top decade of the support
        ratio: tail_median / head_median
        sum_identity_residual: |sum f P - (mean degree - 1)| when a distribution is given
    """

    k_bound: float
    bounded_increments: bool
    validity_sum: float
    validity_branch: str
    tail_class: str
    head_median: float
    tail_median: float
    ratio: float
    sum_identity_residual: Optional[float] = None


def _bounded_validity_sum(values: np.ndarray) -> float:
    c = values.max()
    if c <= 0:
        return 0.0
    i = np.flatnonzero(values > 0) + 1
    return float(np.sum(np.exp(-(i - 1) * np.log1p(1 / c)) / values[i - 1]))


def _diverging_validity_sum(values: np.ndarray) -> float:
    with np.errstate(divide="ignore"):
        inverse = np.where(values > 0, 1 / values, np.inf)
    return float(np.sum(np.exp(-np.cumsum(inverse))))


def check_conditions(
    f: AttachmentFunction,
    dist: Optional[DegreeDistribution] = None,
    ratio_threshold: float = HEAVY_TAIL_RATIO,
) -> ConditionReport:
    """
    Report-only check of an attachment function: increment bound, partial sum of the convergence condition and a
    heavy-tail classification.

    The classification is a finite-support heuristic: f counts as diverging when the median of f over the top decade
    of the support (degrees above d_max / 10) is at least `ratio_threshold` times the median over degrees
    1..min(10, d_max). Oscillating tables that are neither bounded nor diverging get a class, but it carries no
    meaning.

    Args:
        f: attachment function
        dist: distribution f was inverted from, enables the sum identity check
        ratio_threshold: decade-median ratio from which f counts as diverging

    Returns:
        condition report
    """
    values = f.values
    k_bound = float(np.abs(np.diff(values)).max()) if f.d_max > 1 else 0.0

    head_median = float(np.median(values[: min(10, f.d_max)]))
    tail_median = float(np.median(values[f.degrees > f.d_max / 10]))
    if head_median > 0:
        ratio = tail_median / head_median
    else:
        ratio = np.inf if tail_median > 0 else 0.0
    tail_class = DIVERGING if ratio >= ratio_threshold else BOUNDED

    if tail_class == DIVERGING:
        validity_sum = _diverging_validity_sum(values)
    else:
        validity_sum = _bounded_validity_sum(values)

    residual = None
    if dist is not None:
        n = min(f.d_max, dist.d_max)
        weighted = float(np.dot(values[:n], dist.pmf[:n]))
        residual = abs(weighted - (mean_degree(dist) - 1))

    return ConditionReport(
        k_bound=k_bound,
        bounded_increments=bool(np.isfinite(k_bound)),
        validity_sum=validity_sum,
        validity_branch=tail_class,
        tail_class=tail_class,
        head_median=head_median,
        tail_median=tail_median,
        ratio=ratio,
        sum_identity_residual=residual,
    )
