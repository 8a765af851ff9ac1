import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

import numpy as np

from attachpy.distributions.distributions import DegreeDistribution
from attachpy.exceptions import EmptyInputError, InvalidParameterError

logger = logging.getLogger()


@dataclass(frozen=True, eq=False)
class RawHistogram:
    """
    Observed number of nodes per degree, the carrier of empirical degree distributions.

    Args:
        counts: mapping degree -> non-negative count (counts may be fractional)
    """

    counts: Dict[int, float]

    def __post_init__(self):
        counts = {}
        for degree, count in dict(self.counts).items():
            if int(degree) != degree or degree < 1:
                raise InvalidParameterError(f"degrees must be integers >= 1, got {degree}")
            if not np.isfinite(count) or count < 0:
                raise InvalidParameterError(f"count for degree {degree} must be non-negative, got {count}")
            counts[int(degree)] = counts.get(int(degree), 0) + count
        if not counts or sum(counts.values()) <= 0:
            raise EmptyInputError("histogram has no positive counts")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "RawHistogram":
        return cls(dict(Counter(int(x) for x in degrees)))

    @property
    def total(self) -> float:
        return float(sum(self.counts.values()))

    @property
    def max_degree(self) -> int:
        return max(degree for degree, count in self.counts.items() if count > 0)

    def to_array(self, d_max: Optional[int] = None) -> np.ndarray:
        """
        Counts as a dense array over degrees 1..d_max; counts above d_max are dropped.
        """
        d_max = d_max or self.max_degree
        array = np.zeros(d_max, dtype=float)
        for degree, count in self.counts.items():
            if degree <= d_max:
                array[degree - 1] += count
        return array


def interpolate_log_log(masses: np.ndarray) -> Tuple[np.ndarray, FrozenSet[int]]:
    """
    Fill zero masses below the last positive degree with straight lines in log-log coordinates between the nearest
    lower and higher positive-mass degrees. Zeros before the first positive degree are filled by extending the first
    segment to the left (a flat line if there is only one positive degree). No renormalization takes place.

    Args:
        masses: non-negative mass per degree, degree 1 first

    Returns:
        filled masses and the set of filled degrees
    """
    masses = np.asarray(masses, dtype=float)
    positive = np.flatnonzero(masses > 0)
    if len(positive) == 0:
        raise EmptyInputError("no positive mass to interpolate from")
    filled = masses.copy()
    missing = np.flatnonzero(masses[: positive[-1] + 1] == 0)
    if len(missing) == 0:
        return filled, frozenset()

    log_x = np.log(positive + 1.0)
    log_y = np.log(masses[positive])
    log_missing = np.log(missing + 1.0)
    filled[missing] = np.exp(np.interp(log_missing, log_x, log_y))

    leading = missing < positive[0]
    if leading.any():
        if len(positive) >= 2:
            slope = (log_y[1] - log_y[0]) / (log_x[1] - log_x[0])
        else:
            slope = 0.0
        filled[missing[leading]] = np.exp(log_y[0] + slope * (log_missing[leading] - log_x[0]))
        logger.warning(
            f"extrapolated {int(leading.sum())} degrees below the first observed degree {positive[0] + 1}"
        )
    return filled, frozenset((missing + 1).tolist())


def load_empirical(hist: RawHistogram, d_max_override: Optional[int] = None) -> DegreeDistribution:
    """
    Turn an observed histogram into a degree distribution without zero-mass gaps. Missing interior degrees are
    interpolated as power laws between their closest observed neighbours, then the result is renormalized.

    Args:
        hist: observed histogram
        d_max_override: optional smaller truncation degree; mass above it is dropped

    Returns:
        gap-free normalized distribution with the filled degrees in `interpolated_degrees`
    """
    d_max = hist.max_degree
    if d_max_override is not None:
        if int(d_max_override) != d_max_override or d_max_override < 1:
            raise InvalidParameterError(f"d_max_override must be a positive integer, got {d_max_override}")
        d_max = min(d_max, int(d_max_override))
    counts = hist.to_array(d_max)
    if counts.sum() <= 0:
        raise EmptyInputError(f"histogram has no mass at degrees up to {d_max}")
    filled, interpolated = interpolate_log_log(counts / counts.sum())
    if interpolated:
        logger.info(f"interpolated {len(interpolated)} zero-mass degrees")
    return DegreeDistribution.from_weights(
        filled,
        source="empirical",
        parameters={"nodes": hist.total},
        interpolated_degrees=interpolated,
    )
