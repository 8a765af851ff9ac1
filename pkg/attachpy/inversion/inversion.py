import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from attachpy.config import FORWARD_ERROR_TOL, FORWARD_WARN_TOL, RATE_TOL
from attachpy.distributions.distributions import DegreeDistribution, mean_degree
from attachpy.exceptions import (
    InconsistentAttachmentError,
    InfeasibleRateError,
    InvalidParameterError,
    ZeroMassDegreeError,
)

logger = logging.getLogger()


@dataclass(frozen=True, eq=False)
class AttachmentFunction:
    """
    Tabulated attachment function f(1..d_max): the weight with which a node of degree i is drawn as an edge endpoint.
    Position 0 of `values` holds f(1).

    Args:
        values: non-negative weight per degree, degree 1 first
        provenance: where the table comes from, e.g. 'inverted from geometric(q=0.5)'
    """

    values: np.ndarray
    provenance: str = "unknown"

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or len(values) == 0:
            raise InvalidParameterError("attachment values must be a non-empty one-dimensional array")
        if not np.all(np.isfinite(values)) or (values < 0).any():
            raise InvalidParameterError("attachment values must be finite and non-negative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def d_max(self) -> int:
        return len(self.values)

    @property
    def degrees(self) -> np.ndarray:
        return np.arange(1, self.d_max + 1)

    def __len__(self) -> int:
        return self.d_max

    def __getitem__(self, degree: int) -> float:
        if not 1 <= degree <= self.d_max:
            return 0.0
        return float(self.values[degree - 1])


@dataclass(frozen=True)
class ModelRate:
    """
    Node-event probability p of the growth model. Every step adds one edge and, with probability p, one node, so the
    realized mean degree is 2/p and the number of edges per node is 1/p.

    Args:
        p: node-event probability in (0, 1]
        mean_degree: mean degree the model realizes with this p
    """

    p: float
    mean_degree: float

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise InvalidParameterError(f"p must lie in (0, 1], got {self.p}")
        if abs(self.p * self.mean_degree - 2.0) > 1e-12:
            raise InvalidParameterError(
                f"p={self.p} and mean_degree={self.mean_degree} are inconsistent; p * mean_degree must equal 2"
            )

    @classmethod
    def from_p(cls, p: float) -> "ModelRate":
        return cls(p=float(p), mean_degree=2.0 / p)

    @property
    def edges_per_node(self) -> float:
        return 1.0 / self.p


def invert(dist: DegreeDistribution) -> AttachmentFunction:
    """
    Attachment function under which the growth model produces `dist` as its degree distribution:
    f(i) = P(k > i) / P(i). The tail mass is accumulated from the highest degree downwards.

    Args:
        dist: degree distribution without zero-mass degrees

    Returns:
        attachment function with f(d_max) = 0
    """
    zero_mass = dist.zero_mass_degrees
    if len(zero_mass):
        raise ZeroMassDegreeError(int(zero_mass[0]))
    values = dist.tail() / dist.pmf
    return AttachmentFunction(values, provenance=f"inverted from {dist.label}")


def node_probability(dist: DegreeDistribution, tol: float = RATE_TOL) -> ModelRate:
    """
    Node-event probability p = 2 / mean degree that makes the model reach the mean degree of `dist`.

    Targets with a mean degree slightly below 2 (within relative `tol`), e.g. truncated mean-2 families, are
    clamped to p = 1 with a warning.

    Args:
        dist: target degree distribution
        tol: relative slack below mean degree 2 that is still accepted

    Returns:
        model rate
    """
    mean = mean_degree(dist)
    if mean < 2.0 * (1.0 - tol):
        raise InfeasibleRateError(
            f"mean degree {mean:.6g} is below 2; every step adds one edge, so no p <= 1 reaches it"
        )
    if mean < 2.0:
        logger.warning(f"mean degree {mean:.12g} is slightly below 2, using p = 1")
        return ModelRate.from_p(1.0)
    return ModelRate.from_p(2.0 / mean)


def forward(
    f: Union[AttachmentFunction, np.ndarray],
    warn_tol: float = FORWARD_WARN_TOL,
    error_tol: float = FORWARD_ERROR_TOL,
) -> DegreeDistribution:
    """
    Stationary degree distribution of the model for a given attachment function, from the recurrence
    P(1) = 1 / (1 + f(1)) and P(i) = f(i-1) P(i-1) / (1 + f(i)). The result is not renormalized; its deviation from
    unit mass is stored as `parameters['residual']`.

    Args:
        f: attachment function
        warn_tol: residual above which a warning is logged
        error_tol: residual above which the table is rejected

    Returns:
        unnormalized degree distribution over 1..d_max
    """
    if not isinstance(f, AttachmentFunction):
        f = AttachmentFunction(f)
    values = f.values
    ratios = np.empty_like(values)
    ratios[0] = 1.0 / (1.0 + values[0])
    ratios[1:] = values[:-1] / (1.0 + values[1:])
    pmf = np.cumprod(ratios)
    residual = abs(float(pmf.sum()) - 1.0)
    if residual > error_tol:
        raise InconsistentAttachmentError(
            f"forward recurrence sums to {pmf.sum():.12g}; f does not come from a distribution on 1..{f.d_max}"
        )
    if residual > warn_tol:
        logger.warning(f"forward recurrence residual {residual:.3e} exceeds {warn_tol:.0e}")
    return DegreeDistribution(pmf, source="forward", parameters={"residual": residual})
