from typing import Any, Dict

import numpy as np
from scipy.special import zeta

from attachpy.config import DEFAULT_D_MAX
from attachpy.distributions.distributions import (
    broken_power_law_log_gamma,
    build_distribution,
    log_gamma_ratio,
)
from attachpy.exceptions import InfeasibleRateError, InvalidParameterError
from attachpy.inversion.inversion import AttachmentFunction, ModelRate

# extra terms for the Poisson backward recurrence beyond the requested support
POISSON_LOOKAHEAD = 64


def _chung_lu_f(i: np.ndarray, alpha: float, b: float) -> np.ndarray:
    return (i + b) / (alpha - 1)


def _power_law_f(i: np.ndarray, alpha: float) -> np.ndarray:
    # zeta(alpha, i + 1) is the Hurwitz tail sum over k > i
    return np.exp(np.log(zeta(alpha, i + 1)) + alpha * np.log(i))


def _geometric_f(i: np.ndarray, q: float) -> np.ndarray:
    return np.full(len(i), (1 - q) / q)


def _poisson_f(i: np.ndarray, lam: float) -> np.ndarray:
    """
    f(i) = lam / (i+1) * (1 + f(i+1)), run backwards from far beyond the support where f is set to 0; the start error
    is damped by a factor lam / (i+1) per step.
    """
    start = len(i) + POISSON_LOOKAHEAD + int(4 * lam)
    values = np.zeros(len(i))
    current = 0.0
    for degree in range(start, 0, -1):
        current = lam / (degree + 1) * (1.0 + current)
        if degree <= len(i):
            values[degree - 1] = current
    return values


def _broken_power_law_f(
    i: np.ndarray, alpha1: float, alpha2: float, b1: float, b2: float, d: int
) -> np.ndarray:
    upper = _chung_lu_f(i, alpha2, b2)
    jump = _chung_lu_f(d, alpha2, b2) - _chung_lu_f(d, alpha1, b1)
    log_mass_ratio = log_gamma_ratio(d + b1, alpha1) - log_gamma_ratio(i + b1, alpha1)
    # clipped above the break, where the lower branch is discarded anyway
    lower = _chung_lu_f(i, alpha1, b1) + np.exp(np.minimum(log_mass_ratio, 0.0)) * jump
    return np.where(i < d, lower, upper)


_CLOSED_FORMS = {
    "chung_lu": _chung_lu_f,
    "power_law": _power_law_f,
    "geometric": _geometric_f,
    "poisson": _poisson_f,
    "broken_power_law": _broken_power_law_f,
}


def closed_form_f(
    family: str,
    params: Dict[str, Any],
    d_max: int = DEFAULT_D_MAX,
    truncated: bool = False,
) -> AttachmentFunction:
    """
    Closed-form attachment function of a distribution family, tabulated over 1..d_max.

    With `truncated=False` the infinite-support formula is returned. With `truncated=True` the table is corrected for
    the truncation of the target at d_max, f_D(i) = f(i) - f(D) P(D) / P(i), which is what `invert` produces for the
    distribution built with the same parameters.

    Args:
        family: 'chung_lu', 'power_law', 'geometric', 'poisson' or 'broken_power_law'
        params: parameters of the family, as named in the builder functions
        d_max: truncation degree
        truncated: whether to correct for truncation at d_max

    Returns:
        attachment function
    """
    if family not in _CLOSED_FORMS:
        raise InvalidParameterError(f"Unknown family {family}")
    if not isinstance(params, dict):
        raise TypeError("`params` must be a dict")
    # building the distribution validates the parameters and gives the truncated support
    dist = build_distribution(family, d_max=d_max, **params)
    if truncated:
        d_max = dist.d_max
    i = np.arange(1, d_max + 1, dtype=float)
    values = _CLOSED_FORMS[family](i, **params)
    if truncated:
        values = values - values[-1] * dist.pmf[-1] / dist.pmf
        values[-1] = 0.0
        values = np.maximum(values, 0.0)
        provenance = f"closed-form {dist.label} truncated"
    else:
        provenance = f"closed-form {dist.label}"
    return AttachmentFunction(values, provenance=provenance)


def _segment_tail_mass(n: float, alpha: float, b: float) -> float:
    # sum over k >= n of Gamma(k+b) / Gamma(k+b+alpha)
    return float(np.exp(log_gamma_ratio(n + b, alpha - 1))) / (alpha - 1)


def _segment_tail_moment(n: float, alpha: float, b: float) -> float:
    # sum over k >= n of k Gamma(k+b) / Gamma(k+b+alpha)
    ratio = float(np.exp(log_gamma_ratio(n + b, alpha - 1)))
    return ratio * ((n + b) / (alpha - 2) - b / (alpha - 1))


def _broken_power_law_mean(alpha1: float, alpha2: float, b1: float, b2: float, d: int) -> float:
    gamma = float(np.exp(broken_power_law_log_gamma(alpha1, alpha2, b1, b2, d)))
    mass = (
        _segment_tail_mass(1, alpha1, b1)
        - _segment_tail_mass(d + 1, alpha1, b1)
        + gamma * _segment_tail_mass(d + 1, alpha2, b2)
    )
    moment = (
        _segment_tail_moment(1, alpha1, b1)
        - _segment_tail_moment(d + 1, alpha1, b1)
        + gamma * _segment_tail_moment(d + 1, alpha2, b2)
    )
    return moment / mass


def closed_form_rate(family: str, params: Dict[str, Any]) -> ModelRate:
    """
    Node-event probability of an infinite-support family, p = 2 / mean degree, from the closed-form mean.

    Args:
        family: 'chung_lu', 'power_law', 'geometric', 'poisson' or 'broken_power_law'
        params: parameters of the family

    Returns:
        model rate
    """
    if family not in _CLOSED_FORMS:
        raise InvalidParameterError(f"Unknown family {family}")
    # small support, only to validate the parameters
    d_max = params["d"] + 1 if family == "broken_power_law" and "d" in params else 2
    build_distribution(family, d_max=d_max, **params)
    if family == "chung_lu":
        p = 2 * (params["alpha"] - 2) / (params["alpha"] + params["b"] - 1)
    elif family == "power_law":
        p = 2 * zeta(params["alpha"]) / zeta(params["alpha"] - 1)
    elif family == "geometric":
        p = 2 * params["q"]
    elif family == "poisson":
        p = 2 * -np.expm1(-params["lam"]) / params["lam"]
    else:
        p = 2 / _broken_power_law_mean(**params)
    if p > 1:
        raise InfeasibleRateError(f"{family} with {params} has mean degree below 2 (p = {p:.6g})")
    return ModelRate.from_p(float(p))


def chung_lu_exponent(p: float) -> float:
    """
    Tail exponent alpha = 2 + p / (2 - p) that linear attachment f(i) proportional to i produces with rate p.
    """
    if not 0 < p <= 1:
        raise InvalidParameterError(f"p must lie in (0, 1], got {p}")
    return 2 + p / (2 - p)


def chung_lu_offset(alpha: float, p: float) -> float:
    """
    Offset b of the generalized Chung-Lu distribution with exponent `alpha` whose mean degree is 2 / p.

    Args:
        alpha: wanted tail exponent, must exceed 2
        p: wanted node-event probability in (0, 1]

    Returns:
        offset b, always above -1 for p <= 1
    """
    if not alpha > 2:
        raise InvalidParameterError(f"alpha must exceed 2, got {alpha}")
    if not 0 < p <= 1:
        raise InvalidParameterError(f"p must lie in (0, 1], got {p}")
    return 2 * (alpha - 2) / p - alpha + 1
