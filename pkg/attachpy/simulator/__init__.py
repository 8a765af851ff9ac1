from .fenwick import FenwickTree
from .graph import GrowthGraph
from .sampler import DegreeClassSampler
from .simulator import GrowthSimulator, SimulationConfig, run

__all__ = [
    "DegreeClassSampler",
    "FenwickTree",
    "GrowthGraph",
    "GrowthSimulator",
    "SimulationConfig",
    "run",
]
