import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression
from sklearn.metrics import r2_score

from attachpy.config import MIN_FIT_POINTS, SPIKE_TOLERANCE, SPIKE_WINDOW
from attachpy.distributions.distributions import DegreeDistribution
from attachpy.distributions.empirical import RawHistogram
from attachpy.exceptions import EmptyInputError, FitError, InvalidParameterError
from attachpy.simulator.graph import GrowthGraph

logger = logging.getLogger()


@dataclass(frozen=True)
class DDComparison:
    tv_distance: float
    max_pointwise_log_ratio: float
    support_mismatch: float


@dataclass(frozen=True)
class TailFit:
    """
    Least-squares fit of log CCDF against log degree. `slope` is the magnitude of the CCDF exponent, so the pmf
    exponent is `slope + 1`.
    """

    fit_range: Tuple[int, int]
    slope: float
    r_squared: float
    n_points: int

    @property
    def pmf_exponent(self) -> float:
        return self.slope + 1


@dataclass(frozen=True)
class SpikeReport:
    degree: int
    target_ratio: float
    realized_ratio: float
    ratio: float
    flagged: bool


def empirical_dd(graph: Union[GrowthGraph, RawHistogram]) -> DegreeDistribution:
    """
    Realized degree distribution pmf[i] = (nodes of degree i) / (number of nodes). Degrees without nodes keep zero
    mass; they are listed in `zero_mass_degrees` of the result.

    Args:
        graph: generated graph or observed histogram of node degrees

    Returns:
        distribution over 1..largest degree
    """
    if isinstance(graph, RawHistogram):
        counts = graph.to_array()
    else:
        counts = np.asarray(graph.degree_counts[1:], dtype=float)
    total = counts.sum()
    if total <= 0:
        raise EmptyInputError("graph has no nodes")
    dist = DegreeDistribution(counts / total, source="realized", parameters={"nodes": float(total)})
    if len(dist.zero_mass_degrees):
        logger.info(f"realized distribution has {len(dist.zero_mass_degrees)} degrees without nodes")
    return dist


def _aligned(first: DegreeDistribution, second: DegreeDistribution) -> Tuple[np.ndarray, np.ndarray]:
    n = max(first.d_max, second.d_max)
    return (
        np.pad(first.pmf, (0, n - first.d_max)),
        np.pad(second.pmf, (0, n - second.d_max)),
    )


def compare(target: DegreeDistribution, realized: DegreeDistribution) -> DDComparison:
    """
    Distance between two degree distributions over the union of their supports, missing mass counting as 0.

    Args:
        target: target distribution
        realized: realized distribution

    Returns:
        total variation distance, the largest |log(target / realized)| over degrees where both are positive, and the
        mass on degrees where exactly one of them is zero
    """
    p, q = _aligned(target, realized)
    tv_distance = float(np.clip(0.5 * np.abs(p - q).sum(), 0.0, 1.0))
    both = (p > 0) & (q > 0)
    max_log_ratio = float(np.abs(np.log(p[both] / q[both])).max()) if both.any() else 0.0
    support_mismatch = float(p[(p > 0) & (q == 0)].sum() + q[(q > 0) & (p == 0)].sum())
    return DDComparison(tv_distance, max_log_ratio, support_mismatch)


def fit_tail_slope(
    dist: DegreeDistribution, lo: int, hi: int, min_points: int = MIN_FIT_POINTS
) -> TailFit:
    """
    Fit a straight line through (log i, log P(X > i)) for the degrees in [lo, hi] with positive mass and positive
    CCDF. Meaningless for light-tailed distributions; consult `check_conditions` first.

    Args:
        dist: degree distribution
        lo: lowest degree of the fit range
        hi: highest degree of the fit range
        min_points: minimum number of usable degrees

    Returns:
        tail fit
    """
    if not 1 <= lo < hi <= dist.d_max:
        raise InvalidParameterError(f"fit range must satisfy 1 <= lo < hi <= {dist.d_max}, got [{lo}, {hi}]")
    degrees = dist.degrees[lo - 1 : hi]
    pmf = dist.pmf[lo - 1 : hi]
    ccdf = dist.ccdf()[lo - 1 : hi]
    usable = (pmf > 0) & (ccdf > 0)
    if usable.sum() < min_points:
        raise FitError(f"only {int(usable.sum())} usable degrees in [{lo}, {hi}], need {min_points}")
    x = np.log(degrees[usable]).reshape(-1, 1)
    y = np.log(ccdf[usable])
    regression = LinearRegression().fit(x, y)
    r_squared = float(np.clip(r2_score(y, regression.predict(x)), 0.0, 1.0))
    return TailFit((int(lo), int(hi)), float(-regression.coef_[0]), r_squared, int(usable.sum()))


def _local_ratio(pmf: np.ndarray, degree: int, window: int) -> float:
    if not 1 <= degree <= len(pmf) or pmf[degree - 1] <= 0:
        return 0.0
    neighbours = np.r_[pmf[max(degree - 1 - window, 0) : degree - 1], pmf[degree : degree + window]]
    neighbours = neighbours[neighbours > 0]
    if len(neighbours) == 0:
        return np.nan
    return float(np.exp(np.log(pmf[degree - 1]) - np.log(neighbours).mean()))


def spike_fidelity(
    target: DegreeDistribution,
    realized: DegreeDistribution,
    spike_degrees: Sequence[int],
    window: int = SPIKE_WINDOW,
    tolerance: float = SPIKE_TOLERANCE,
) -> List[SpikeReport]:
    """
    Compare how much spikes stand out in the target and in the realized distribution. For each spike degree s the
    local ratio pmf[s] / geometric mean of the positive pmf values within `window` degrees of s (s excluded) is
    computed for both; the report holds realized / target, flagged when outside [1 / tolerance, tolerance].

    Args:
        target: target distribution
        realized: realized distribution
        spike_degrees: degrees of the spikes
        window: half width of the neighbourhood
        tolerance: accepted factor between realized and target local ratios

    Returns:
        one report per spike degree
    """
    if window < 1:
        raise InvalidParameterError(f"window must be positive, got {window}")
    reports = []
    for degree in spike_degrees:
        target_ratio = _local_ratio(target.pmf, int(degree), window)
        realized_ratio = _local_ratio(realized.pmf, int(degree), window)
        if target_ratio > 0:
            ratio = realized_ratio / target_ratio
        else:
            ratio = np.nan
        flagged = not (1 / tolerance <= ratio <= tolerance)
        reports.append(SpikeReport(int(degree), target_ratio, realized_ratio, ratio, flagged))
    return reports


def plot_data(dist: DegreeDistribution, log_binning: bool = False, bins_per_decade: int = 10) -> pd.DataFrame:
    """
    Table with columns `degree`, `pmf` and `ccdf` for plotting. With `log_binning`, degrees are grouped in
    logarithmically spaced bins: `degree` is the geometric centre of the bin, `pmf` the mean mass per degree in the bin
    and `ccdf` the CCDF at the last degree of the bin. Binned data is meant for plots only.

    Args:
        dist: degree distribution
        log_binning: whether to bin logarithmically
        bins_per_decade: number of bins per factor 10 in degree

    Returns:
        Pandas dataframe
    """
    df = pd.DataFrame({"degree": dist.degrees, "pmf": dist.pmf, "ccdf": dist.ccdf()})
    if not log_binning:
        return df
    n_edges = int(np.ceil(np.log10(dist.d_max + 1) * bins_per_decade)) + 1
    edges = np.unique(np.floor(np.logspace(0, np.log10(dist.d_max + 1), n_edges)).astype(int))
    df["bin"] = np.searchsorted(edges, df["degree"], side="right") - 1
    binned = df.groupby("bin").agg(
        degree=("degree", lambda x: float(np.exp(np.log(x).mean()))),
        pmf=("pmf", "mean"),
        ccdf=("ccdf", "last"),
    )
    return binned.reset_index(drop=True)
