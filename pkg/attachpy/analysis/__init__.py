from .analysis import (
    DDComparison,
    SpikeReport,
    TailFit,
    compare,
    empirical_dd,
    fit_tail_slope,
    plot_data,
    spike_fidelity,
)

__all__ = [
    "DDComparison",
    "SpikeReport",
    "TailFit",
    "compare",
    "empirical_dd",
    "fit_tail_slope",
    "plot_data",
    "spike_fidelity",
]
