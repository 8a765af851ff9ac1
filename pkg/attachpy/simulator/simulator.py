import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from attachpy.config import (
    INITIAL_CAPACITY,
    RANDOM_BATCH,
    REBUILD_INTERVAL,
    SELF_LOOP_RETRIES,
)
from attachpy.exceptions import DeadStartError, DomainError, InvalidParameterError
from attachpy.inversion.inversion import AttachmentFunction
from attachpy.simulator.graph import GrowthGraph
from attachpy.simulator.sampler import DegreeClassSampler

logger = logging.getLogger()

SELF_LOOP_POLICIES = ["resample", "allow"]
DEFAULT_G0 = ((0, 1),)
# failed draws after which the index is rebuilt before drawing again
MAX_FAILED_DRAWS = 8


@dataclass(frozen=True)
class SimulationConfig:
    """
    Parameters of one run of the growth model.

    Args:
        p: node-event probability in (0, 1]
        steps: number of steps, each adds exactly one edge
        seed: seed of the random number generator
        self_loop_policy: 'resample' draws the second endpoint again up to `max_resamples` times when it equals the
        first, then keeps the self-loop; 'allow' keeps self-loops right away
        max_resamples: number of redraws under the 'resample' policy
        multi_edge_policy: only 'allow'; the graph is a multigraph
        g0: initial edge list, defaults to a single edge between nodes 0 and 1
    """

    p: float
    steps: int
    seed: int
    self_loop_policy: str = "resample"
    max_resamples: int = SELF_LOOP_RETRIES
    multi_edge_policy: str = "allow"
    g0: Optional[Sequence[Tuple[int, int]]] = None

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise InvalidParameterError(f"p must lie in (0, 1], got {self.p}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise InvalidParameterError(f"steps must be a positive integer, got {self.steps}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise InvalidParameterError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.self_loop_policy not in SELF_LOOP_POLICIES:
            raise InvalidParameterError(
                f"self_loop_policy must be one of {SELF_LOOP_POLICIES}, got {self.self_loop_policy}"
            )
        if self.max_resamples < 0:
            raise InvalidParameterError(f"max_resamples must be non-negative, got {self.max_resamples}")
        if self.multi_edge_policy != "allow":
            raise InvalidParameterError("only multi_edge_policy='allow' is supported")
        object.__setattr__(self, "steps", int(self.steps))
        object.__setattr__(self, "seed", int(self.seed))
        g0 = DEFAULT_G0 if self.g0 is None else self.g0
        object.__setattr__(self, "g0", tuple((int(u), int(v)) for u, v in g0))


class GrowthSimulator:
    """
    Random growth model. At every step, with probability p a new node is attached to an existing node v, otherwise an
    edge (u, v) is added between existing nodes; endpoints are drawn with probability f(deg) / sum of f(deg) over all
    nodes.

    Usage:
        simulator = GrowthSimulator(f, SimulationConfig(p=0.5, steps=10**5, seed=42))
        graph = simulator.run()

    Args:
        f: attachment function
        config: simulation parameters
        initial_capacity: number of degree classes the sampler indexes at the start
        rebuild_interval: number of sampler updates between two index rebuilds
        random_batch: number of uniforms drawn per call to the random number generator
    """

    def __init__(
        self,
        f: AttachmentFunction,
        config: SimulationConfig,
        initial_capacity: int = INITIAL_CAPACITY,
        rebuild_interval: int = REBUILD_INTERVAL,
        random_batch: int = RANDOM_BATCH,
    ):
        self.f = f
        self.config = config
        self.d_max = f.d_max
        self.rng = np.random.default_rng(config.seed)
        self.random_batch = random_batch
        self._uniforms: List[float] = []
        self._cursor = 0

        self.degree: List[int] = []
        self.edges: List[int] = []
        self.steps_done = 0
        self.forced_node_events = 0
        self.self_loops = 0
        self.resamples = 0
        self.wall_time = 0.0

        g0_degree = np.bincount(np.array(config.g0, dtype=np.int64).ravel())
        if (g0_degree == 0).any():
            node = int(np.flatnonzero(g0_degree == 0)[0])
            raise InvalidParameterError(f"initial graph has isolated node {node}; node ids must be dense")
        if g0_degree.max() > self.d_max:
            raise DomainError(
                f"initial graph has a node of degree {g0_degree.max()} above d_max={self.d_max} of f"
            )
        if f[1] == 0 and config.p < 1:
            raise DeadStartError("f(1) = 0: new nodes can never gain edges, edge events are impossible")

        self.sampler = DegreeClassSampler(f, initial_capacity=initial_capacity, rebuild_interval=rebuild_interval)
        for u, v in config.g0:
            self.edges.extend((u, v))
        for node, degree in enumerate(g0_degree.tolist()):
            self.degree.append(degree)
            self.sampler.add_node(node, degree)
        if self.sampler.total <= 0:
            raise DeadStartError("no node of the initial graph has positive attachment weight")

    @property
    def node_count(self) -> int:
        return len(self.degree)

    @property
    def edge_count(self) -> int:
        return len(self.edges) // 2

    def _uniform(self) -> float:
        if self._cursor == len(self._uniforms):
            self._uniforms = self.rng.random(self.random_batch).tolist()
            self._cursor = 0
        u = self._uniforms[self._cursor]
        self._cursor += 1
        return u

    def _draw(self) -> Optional[int]:
        """
        Draw one endpoint, or None when no node has positive weight.
        """
        sampler = self.sampler
        failed = 0
        while True:
            if sampler.total <= 0:
                return None
            node = sampler.sample(self._uniform())
            if node is not None:
                return node
            failed += 1
            if failed % MAX_FAILED_DRAWS == 0:
                sampler.rebuild()

    def _grow(self, node: int, increment: int) -> None:
        old = self.degree[node]
        self.degree[node] = old + increment
        self.sampler.move(node, old, old + increment)

    def _add_node(self, target: int) -> None:
        node = len(self.degree)
        self.degree.append(1)
        self.sampler.add_node(node, 1)
        self._grow(target, 1)
        self.edges.extend((node, target))

    def _forced_node_event(self) -> None:
        first = len(self.degree)
        for node in (first, first + 1):
            self.degree.append(1)
            self.sampler.add_node(node, 1)
        self.edges.extend((first, first + 1))
        self.forced_node_events += 1

    def _edge_event(self) -> None:
        u = self._draw()
        if u is None:
            self._forced_node_event()
            return
        v = self._draw()
        if u == v and self.config.self_loop_policy == "resample":
            for _ in range(self.config.max_resamples):
                self.resamples += 1
                v = self._draw()
                if v != u:
                    break
        if u == v:
            if self.degree[u] + 2 > self.d_max:
                # the self-loop would push u past d_max: attach a new node to u instead
                self._add_node(u)
                self.forced_node_events += 1
                return
            self.self_loops += 1
            self._grow(u, 2)
        else:
            self._grow(u, 1)
            self._grow(v, 1)
        self.edges.extend((u, v))

    def step(self) -> None:
        """
        Apply one step of the model.
        """
        if self._uniform() < self.config.p:
            target = self._draw()
            if target is None:
                self._forced_node_event()
            else:
                self._add_node(target)
        else:
            self._edge_event()
        self.steps_done += 1

    def run(self, steps: Optional[int] = None) -> GrowthGraph:
        """
        Apply `steps` steps (default: the configured number) and return the graph.
        """
        steps = self.config.steps if steps is None else steps
        start = time.perf_counter()
        forced_before = self.forced_node_events
        for _ in range(steps):
            self.step()
        self.wall_time += time.perf_counter() - start
        if self.forced_node_events > forced_before:
            logger.warning(
                f"{self.forced_node_events - forced_before} steps found no endpoint with positive weight "
                "and added two new nodes instead"
            )
        return self.graph()

    def summary(self) -> Dict[str, Any]:
        return {
            "nodes": self.node_count,
            "edges": self.edge_count,
            "steps": self.steps_done,
            "p": self.config.p,
            "forced_node_events": self.forced_node_events,
            "self_loops": self.self_loops,
            "resamples": self.resamples,
            "seed": self.config.seed,
            "wall_time": round(self.wall_time, 6),
        }

    def graph(self) -> GrowthGraph:
        edges = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        degree = np.array(self.degree, dtype=np.int64)
        degree_counts = np.bincount(degree)
        return GrowthGraph(edges, degree, degree_counts, diagnostics=self.summary())


def run(f: AttachmentFunction, config: SimulationConfig) -> GrowthGraph:
    """
    Run the growth model with attachment function `f` for `config.steps` steps.

    Args:
        f: attachment function
        config: simulation parameters

    Returns:
        generated graph; run counters are in `graph.diagnostics`
    """
    return GrowthSimulator(f, config).run()
