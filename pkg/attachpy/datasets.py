import logging
from typing import Union

import numpy as np

from attachpy.config import DEFAULT_D_MAX
from attachpy.distributions.distributions import (
    DegreeDistribution,
    boost,
    build_broken_power_law,
)
from attachpy.distributions.empirical import RawHistogram

logger = logging.getLogger()

BROKEN_POWER_LAW_PARAMETERS = {"alpha1": 2.1, "alpha2": 4.0, "b1": 1.0, "b2": 1.0, "d": 100}
SPIKES = {20: 5.0, 2000: 5.0}


def load_spiked_broken_power_law(d_max: int = DEFAULT_D_MAX) -> DegreeDistribution:
    dist = build_broken_power_law(**BROKEN_POWER_LAW_PARAMETERS, d_max=d_max)
    for degree, factor in SPIKES.items():
        if degree <= dist.d_max:
            dist = boost(dist, degree, factor)
    logger.info(f"Broken power law with spikes at degrees {list(SPIKES)}")
    return dist


def load_spiked_histogram(n_nodes: int = 10**6, seed: int = 0, d_max: int = DEFAULT_D_MAX) -> RawHistogram:
    target = load_spiked_broken_power_law(d_max=d_max)
    counts = np.random.default_rng(seed).multinomial(n_nodes, target.pmf)
    positive = np.flatnonzero(counts)
    logger.info(f"Histogram of {n_nodes} nodes over {len(positive)} observed degrees")
    return RawHistogram(dict(zip((positive + 1).tolist(), counts[positive].tolist())))


def load_data(kind: str = "spiked_broken_power_law", **kwargs) -> Union[DegreeDistribution, RawHistogram]:
    """
    Load data for experimentation. `kind` can be 'spiked_broken_power_law' or 'spiked_histogram'.

    The spiked broken power law is a synthetic stand-in for the degree distribution of a large social graph: a broken
    power law with exponents 2.1 and 4, offsets 1 and break degree 100, whose masses at degrees 20 and 2000 are
    multiplied by 5. The spiked histogram is a multinomial sample of it; its high degrees are sparsely observed, so it
    has gaps that `load_empirical` fills.

    Args:
        kind: 'spiked_broken_power_law' or 'spiked_histogram'
        **kwargs: passed on, e.g. `d_max`, or `n_nodes` and `seed` for the histogram

    Returns:
        degree distribution or raw histogram
    """
    if kind == "spiked_broken_power_law":
        return load_spiked_broken_power_law(**kwargs)
    elif kind == "spiked_histogram":
        return load_spiked_histogram(**kwargs)
    else:
        raise ValueError(f"Unknown dataset {kind}")
