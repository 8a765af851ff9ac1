from .distributions import (
    DegreeDistribution,
    boost,
    build_broken_power_law,
    build_distribution,
    build_exact_power_law,
    build_generalized_chung_lu,
    build_geometric,
    build_poisson,
    mean_degree,
)
from .empirical import RawHistogram, interpolate_log_log, load_empirical

__all__ = [
    "DegreeDistribution",
    "RawHistogram",
    "boost",
    "build_broken_power_law",
    "build_distribution",
    "build_exact_power_law",
    "build_generalized_chung_lu",
    "build_geometric",
    "build_poisson",
    "interpolate_log_log",
    "load_empirical",
    "mean_degree",
]
