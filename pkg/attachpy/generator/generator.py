import logging
from typing import Optional, Union

from attachpy.distributions.distributions import DegreeDistribution
from attachpy.inversion.conditions import ConditionReport, check_conditions
from attachpy.inversion.inversion import (
    AttachmentFunction,
    ModelRate,
    forward,
    invert,
    node_probability,
)
from attachpy.simulator.graph import GrowthGraph
from attachpy.simulator.simulator import GrowthSimulator, SimulationConfig

logger = logging.getLogger()


class GraphGenerator:
    def __init__(
        self,
        self_loop_policy: str = "resample",
        max_resamples: Optional[int] = None,
        check_roundtrip: bool = True,
        verbose: Union[int, bool] = 0,
    ):
        """
        Generate graphs whose degree distribution follows a target distribution. Fitting inverts the target into an
        attachment function and a node-event probability; generating runs the growth model with them.

        Usage:
            target = build_broken_power_law(2.1, 4, 1, 1, 100, d_max=10**5)
            myGenerator = GraphGenerator()
            myGenerator.fit(target)
            graph = myGenerator.generate(steps=10**5, seed=42)

        Args:
            self_loop_policy: 'resample' or 'allow', see `SimulationConfig`
            max_resamples: number of redraws under the 'resample' policy, defaults to the `SimulationConfig` default
            check_roundtrip: whether to verify the fitted attachment function with the forward recurrence
            verbose: sets verbosity
        """
        self.self_loop_policy = self_loop_policy
        self.max_resamples = max_resamples
        self.check_roundtrip = check_roundtrip
        self.verbose = verbose

    def __repr__(self):
        repr_str = "GraphGenerator\n"
        for key in ["self_loop_policy", "max_resamples", "check_roundtrip"]:
            repr_str += f"  - {key} = {self.__dict__[key]}\n"
        if hasattr(self, "target_"):
            repr_str += f"  - target = {self.target_.label}\n"
            repr_str += f"  - p = {self.rate_.p}\n"
        return repr_str

    def fit(self, dist: DegreeDistribution) -> "GraphGenerator":
        """
        Fit the generator to a target distribution

        Args:
            dist: target degree distribution without zero-mass degrees

        Returns: fitted generator instance

        """
        self.target_ = dist
        self.attachment_: AttachmentFunction = invert(dist)
        self.rate_: ModelRate = node_probability(dist)
        if self.verbose:
            logger.info(f"inverted {dist.label} over {dist.d_max} degrees, p = {self.rate_.p:.6g}")
        if self.check_roundtrip:
            forward(self.attachment_)
        self.conditions_: ConditionReport = check_conditions(self.attachment_, dist)
        if self.verbose:
            logger.info(
                f"tail class {self.conditions_.tail_class} (decade median ratio {self.conditions_.ratio:.3g})"
            )
        return self

    def generate(self, steps: int, seed: int) -> GrowthGraph:
        """
        Generate a graph with the fitted attachment function and node-event probability.

        Args:
            steps: number of growth steps
            seed: seed of the random number generator

        Returns: generated graph

        """
        if not hasattr(self, "attachment_"):
            raise AttributeError("GraphGenerator is not fitted yet, call `fit` first")
        options = {"self_loop_policy": self.self_loop_policy}
        if self.max_resamples is not None:
            options["max_resamples"] = self.max_resamples
        config = SimulationConfig(p=self.rate_.p, steps=steps, seed=seed, **options)
        if self.verbose:
            logger.info(f"simulation of {steps} steps started")
        graph = GrowthSimulator(self.attachment_, config).run()
        if self.verbose:
            logger.info(f"simulation finished: {graph.node_count} nodes, {graph.edge_count} edges")
        return graph
