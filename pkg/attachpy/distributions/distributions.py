from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Optional, Union

import numpy as np
from scipy.special import gammaln

from attachpy.config import DEFAULT_D_MAX, LOG_UNDERFLOW_FLOOR, NORMALIZATION_TOL
from attachpy.exceptions import (
    EmptyInputError,
    InvalidParameterError,
    NormalizationError,
)


@dataclass(frozen=True, eq=False)
class DegreeDistribution:
    """
    Probability mass over the degrees 1..d_max. Position 0 of `pmf` holds the mass of degree 1.

    Instances are immutable: the pmf array is copied and made read-only on construction. Use
    `DegreeDistribution.from_weights` to build a normalized, trimmed distribution from arbitrary non-negative
    weights; the constructor itself only checks that the masses are finite and non-negative, so that unnormalized
    results (e.g. of `forward`) can be represented too.

    Args:
        pmf: mass per degree, degree 1 first
        source: family name, 'empirical', 'realized' or another provenance label
        parameters: construction parameters of the family
        interpolated_degrees: degrees whose mass was filled by interpolation
    """

    pmf: np.ndarray
    source: str = "unknown"
    parameters: Dict[str, Any] = field(default_factory=dict)
    interpolated_degrees: FrozenSet[int] = frozenset()

    def __post_init__(self):
        pmf = np.array(self.pmf, dtype=float)
        if pmf.ndim != 1 or len(pmf) == 0:
            raise NormalizationError("pmf must be a non-empty one-dimensional array")
        if not np.all(np.isfinite(pmf)):
            raise NormalizationError("pmf contains non-finite values")
        if (pmf < 0).any():
            degree = int(np.flatnonzero(pmf < 0)[0]) + 1
            raise NormalizationError(f"negative mass at degree {degree}")
        pmf.setflags(write=False)
        object.__setattr__(self, "pmf", pmf)
        object.__setattr__(self, "parameters", dict(self.parameters))
        object.__setattr__(
            self,
            "interpolated_degrees",
            frozenset(int(x) for x in self.interpolated_degrees),
        )

    @classmethod
    def from_weights(
        cls,
        weights: Union[np.ndarray, Iterable[float]],
        source: str,
        parameters: Optional[Dict[str, Any]] = None,
        interpolated_degrees: Iterable[int] = (),
    ) -> "DegreeDistribution":
        """
        Normalize non-negative weights into a distribution whose support ends at the last positive-mass degree.

        Args:
            weights: unnormalized mass per degree, degree 1 first
            source: provenance label
            parameters: construction parameters
            interpolated_degrees: degrees filled by interpolation

        Returns:
            normalized distribution
        """
        w = np.array(weights, dtype=float)
        if w.ndim != 1 or not np.all(np.isfinite(w)) or (w < 0).any():
            raise NormalizationError("weights must be finite and non-negative")
        positive = np.flatnonzero(w > 0)
        if len(positive) == 0:
            raise EmptyInputError("all weights are zero")
        w = w[: positive[-1] + 1]
        pmf = w / w.sum()
        dist = cls(
            pmf,
            source=source,
            parameters=parameters or {},
            interpolated_degrees=[d for d in interpolated_degrees if d <= len(pmf)],
        )
        dist.check_normalized()
        return dist

    @property
    def d_max(self) -> int:
        return len(self.pmf)

    @property
    def degrees(self) -> np.ndarray:
        return np.arange(1, self.d_max + 1)

    @property
    def total_mass(self) -> float:
        return float(self.pmf.sum())

    @property
    def zero_mass_degrees(self) -> np.ndarray:
        return np.flatnonzero(self.pmf == 0) + 1

    @property
    def label(self) -> str:
        if not self.parameters:
            return self.source
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        return f"{self.source}({params})"

    def __len__(self) -> int:
        return self.d_max

    def __getitem__(self, degree: int) -> float:
        if not 1 <= degree <= self.d_max:
            return 0.0
        return float(self.pmf[degree - 1])

    def tail(self) -> np.ndarray:
        """
        Tail mass T(i) = sum of pmf over degrees k > i, for i = 1..d_max. Accumulated from the highest degree
        downwards so small tail masses keep their relative precision.

        Returns:
            array of tail masses, T(d_max) = 0
        """
        at_least = np.cumsum(self.pmf[::-1])[::-1]
        tail = np.zeros_like(self.pmf)
        tail[:-1] = at_least[1:]
        return tail

    def ccdf(self) -> np.ndarray:
        """
        Complementary cumulative distribution P(X > i) for i = 1..d_max.
        """
        return self.tail()

    def check_normalized(self, tol: float = NORMALIZATION_TOL) -> None:
        residual = abs(self.total_mass - 1.0)
        if residual > tol:
            raise NormalizationError(
                f"pmf sums to {self.total_mass!r}, off by {residual:.3e} (tolerance {tol:.0e})"
            )


def mean_degree(dist: DegreeDistribution) -> float:
    """
    Mean degree sum_i i * pmf[i].

    Args:
        dist: degree distribution

    Returns:
        mean degree
    """
    return float(np.dot(dist.degrees, dist.pmf))


def log_gamma_ratio(x: Union[float, np.ndarray], a: float) -> Union[float, np.ndarray]:
    """
    Logarithm of Gamma(x) / Gamma(x + a), evaluated without forming either Gamma value.
    """
    return gammaln(x) - gammaln(np.add(x, a))


def family_log_weights(family: str, degrees: np.ndarray, **params) -> np.ndarray:
    """
    Unnormalized log-mass of a closed-form family at the given degrees. Parameters are not validated here.

    Args:
        family: 'chung_lu', 'power_law', 'geometric', 'poisson' or 'broken_power_law'
        degrees: degrees to evaluate
        **params: parameters of the family

    Returns:
        log-weights, equal to log P(i) up to an additive constant
    """
    i = np.asarray(degrees, dtype=float)
    if family == "chung_lu":
        return log_gamma_ratio(i + params["b"], params["alpha"])
    elif family == "power_law":
        return -params["alpha"] * np.log(i)
    elif family == "geometric":
        return (i - 1) * np.log1p(-params["q"])
    elif family == "poisson":
        return i * np.log(params["lam"]) - gammaln(i + 1)
    elif family == "broken_power_law":
        alpha1, alpha2 = params["alpha1"], params["alpha2"]
        b1, b2, d = params["b1"], params["b2"], params["d"]
        log_gamma = broken_power_law_log_gamma(alpha1, alpha2, b1, b2, d)
        return np.where(
            i <= d,
            log_gamma_ratio(i + b1, alpha1),
            log_gamma + log_gamma_ratio(i + b2, alpha2),
        )
    else:
        raise InvalidParameterError(f"Unknown family {family}")


def _check_d_max(d_max: int) -> int:
    if int(d_max) != d_max or d_max < 2:
        raise InvalidParameterError(f"d_max must be an integer of at least 2, got {d_max}")
    return int(d_max)


def _from_log_weights(source: str, d_max: int, parameters: Dict[str, Any]) -> DegreeDistribution:
    log_weights = family_log_weights(source, np.arange(1, d_max + 1), **parameters)
    relative = log_weights - log_weights.max()
    weights = np.where(relative < LOG_UNDERFLOW_FLOOR, 0.0, np.exp(relative))
    return DegreeDistribution.from_weights(weights, source=source, parameters=parameters)


def build_generalized_chung_lu(
    alpha: float, b: float, d_max: int = DEFAULT_D_MAX
) -> DegreeDistribution:
    """
    Generalized Chung-Lu distribution P(i) proportional to Gamma(i+b) / Gamma(i+b+alpha), truncated at d_max.

    Args:
        alpha: tail exponent, must exceed 2
        b: offset, must exceed -1
        d_max: truncation degree

    Returns:
        normalized distribution
    """
    if not alpha > 2:
        raise InvalidParameterError(f"alpha must exceed 2, got {alpha}")
    if not b > -1:
        raise InvalidParameterError(f"b must exceed -1, got {b}")
    d_max = _check_d_max(d_max)
    return _from_log_weights("chung_lu", d_max, {"alpha": alpha, "b": b})


def build_exact_power_law(alpha: float, d_max: int = DEFAULT_D_MAX) -> DegreeDistribution:
    """
    Exact power law P(i) proportional to i^(-alpha), normalized by the truncated zeta sum.

    Args:
        alpha: exponent, must exceed 2
        d_max: truncation degree

    Returns:
        normalized distribution
    """
    if not alpha > 2:
        raise InvalidParameterError(f"alpha must exceed 2, got {alpha}")
    d_max = _check_d_max(d_max)
    return _from_log_weights("power_law", d_max, {"alpha": alpha})


def build_geometric(q: float, d_max: int = DEFAULT_D_MAX) -> DegreeDistribution:
    """
    Geometric law P(i) = q (1-q)^(i-1), renormalized over the truncated support.

    Args:
        q: success probability in (0, 1)
        d_max: truncation degree

    Returns:
        normalized distribution
    """
    if not 0 < q < 1:
        raise InvalidParameterError(f"q must lie in (0, 1), got {q}")
    d_max = _check_d_max(d_max)
    return _from_log_weights("geometric", d_max, {"q": q})


def build_poisson(lam: float, d_max: int = DEFAULT_D_MAX) -> DegreeDistribution:
    """
    Zero-truncated Poisson law P(i) proportional to lam^i / i!.

    Args:
        lam: rate, must be positive
        d_max: truncation degree

    Returns:
        normalized distribution
    """
    if not lam > 0:
        raise InvalidParameterError(f"lambda must be positive, got {lam}")
    d_max = _check_d_max(d_max)
    return _from_log_weights("poisson", d_max, {"lam": lam})


def broken_power_law_log_gamma(
    alpha1: float, alpha2: float, b1: float, b2: float, d: int
) -> float:
    """
    Logarithm of the continuity constant joining both segments at the break degree d.
    """
    return float(log_gamma_ratio(d + b1, alpha1) - log_gamma_ratio(d + b2, alpha2))


def build_broken_power_law(
    alpha1: float,
    alpha2: float,
    b1: float,
    b2: float,
    d: int,
    d_max: int = DEFAULT_D_MAX,
) -> DegreeDistribution:
    """
    Two generalized Chung-Lu segments joined continuously at degree d: Gamma(i+b1)/Gamma(i+b1+alpha1) up to d,
    gamma * Gamma(i+b2)/Gamma(i+b2+alpha2) above it.

    Args:
        alpha1: exponent below the break, must exceed 2
        alpha2: exponent above the break, must exceed 2
        b1: offset below the break, must exceed -1
        b2: offset above the break, must exceed -1
        d: break degree, 2 <= d < d_max
        d_max: truncation degree

    Returns:
        normalized distribution
    """
    for name, value in [("alpha1", alpha1), ("alpha2", alpha2)]:
        if not value > 2:
            raise InvalidParameterError(f"{name} must exceed 2, got {value}")
    for name, value in [("b1", b1), ("b2", b2)]:
        if not value > -1:
            raise InvalidParameterError(f"{name} must exceed -1, got {value}")
    d_max = _check_d_max(d_max)
    if int(d) != d or not 2 <= d < d_max:
        raise InvalidParameterError(f"d must be an integer with 2 <= d < d_max, got {d}")
    parameters = {"alpha1": alpha1, "alpha2": alpha2, "b1": b1, "b2": b2, "d": int(d)}
    return _from_log_weights("broken_power_law", d_max, parameters)


def build_distribution(family: str, d_max: int = DEFAULT_D_MAX, **params) -> DegreeDistribution:
    """
    Build a distribution of one of the closed-form families by name.

    Args:
        family: 'chung_lu', 'power_law', 'geometric', 'poisson' or 'broken_power_law'
        d_max: truncation degree
        **params: parameters of the family, as named in the builder functions

    Returns:
        normalized distribution
    """
    builders = {
        "chung_lu": build_generalized_chung_lu,
        "power_law": build_exact_power_law,
        "geometric": build_geometric,
        "poisson": build_poisson,
        "broken_power_law": build_broken_power_law,
    }
    if family not in builders:
        raise InvalidParameterError(f"Unknown family {family}")
    try:
        return builders[family](d_max=d_max, **params)
    except TypeError as e:
        raise InvalidParameterError(f"invalid parameters for {family}: {e}") from e


def boost(dist: DegreeDistribution, degree: int, factor: float) -> DegreeDistribution:
    """
    Multiply the mass of one degree by `factor` and renormalize, e.g. to plant a spike in a smooth target.

    Args:
        dist: distribution to modify
        degree: degree to boost, within the support
        factor: positive multiplier

    Returns:
        renormalized distribution with the boost recorded in its parameters
    """
    if not 1 <= degree <= dist.d_max:
        raise InvalidParameterError(f"degree {degree} outside support 1..{dist.d_max}")
    if not factor > 0:
        raise InvalidParameterError(f"boost factor must be positive, got {factor}")
    weights = dist.pmf.copy()
    weights[degree - 1] *= factor
    parameters = dict(dist.parameters)
    parameters[f"boost_{degree}"] = factor
    return DegreeDistribution.from_weights(
        weights,
        source=dist.source,
        parameters=parameters,
        interpolated_degrees=dist.interpolated_degrees,
    )
