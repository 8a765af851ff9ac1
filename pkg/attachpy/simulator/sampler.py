from typing import Dict, List, Optional

import numpy as np

from attachpy.config import INITIAL_CAPACITY, REBUILD_INTERVAL
from attachpy.exceptions import DomainError
from attachpy.inversion.inversion import AttachmentFunction
from attachpy.simulator.fenwick import FenwickTree


class DegreeClassSampler:
    """
    Two-level weighted sampler over nodes: a degree class i is drawn with probability proportional to
    f(i) * (number of nodes of degree i) from a Fenwick tree over the classes, then a node uniformly from that class's
    bucket. Nodes at degree d_max have weight 0 whatever f(d_max) is, so they are never drawn.

    The index covers the classes 1..capacity; capacity starts small and doubles up to d_max as nodes reach higher
    degrees. Every `rebuild_interval` updates the index is rebuilt from the exact node counts.

    Args:
        f: attachment function
        initial_capacity: number of degree classes indexed at the start
        rebuild_interval: number of class updates between two rebuilds
    """

    def __init__(
        self,
        f: AttachmentFunction,
        initial_capacity: int = INITIAL_CAPACITY,
        rebuild_interval: int = REBUILD_INTERVAL,
    ):
        self.f = f
        self.d_max = f.d_max
        self.rebuild_interval = rebuild_interval
        capacity = min(initial_capacity, self.d_max)
        self.index = FenwickTree(capacity)
        # position 0 is unused so that lists are indexed by degree
        self._weights: List[float] = [0.0]
        self.counts: List[int] = [0]
        self._extend(capacity)
        self.buckets: Dict[int, List[int]] = {}
        self._position: List[int] = []
        self.updates = 0
        self.rebuilds = 0

    def _extend(self, capacity: int) -> None:
        start = len(self._weights)
        weights = self.f.values[start - 1 : capacity].tolist()
        if capacity == self.d_max:
            weights[-1] = 0.0
        self._weights.extend(weights)
        self.counts.extend([0] * (capacity - start + 1))

    def _ensure_capacity(self, degree: int) -> None:
        if degree > self.d_max:
            raise DomainError(f"degree {degree} exceeds d_max={self.d_max}")
        capacity = self.index.capacity
        if degree <= capacity:
            return
        while capacity < degree:
            capacity = min(2 * capacity, self.d_max)
        self._extend(capacity)
        self.index.grow(capacity)

    @property
    def capacity(self) -> int:
        return self.index.capacity

    @property
    def total(self) -> float:
        return self.index.total

    def weight(self, degree: int) -> float:
        """
        Sampling weight of a single node of the given degree.
        """
        if degree >= len(self._weights):
            return 0.0 if degree >= self.d_max else float(self.f.values[degree - 1])
        return self._weights[degree]

    def class_weights(self) -> np.ndarray:
        """
        Exact class weights f(i) * count(i) for i = 1..capacity.
        """
        return np.array(self._weights[1:]) * np.array(self.counts[1:])

    def _update(self, degree: int, sign: int) -> None:
        self.counts[degree] += sign
        weight = self._weights[degree]
        if weight:
            self.index.increment(degree, sign * weight)
        self.updates += 1
        if self.updates % self.rebuild_interval == 0:
            self.rebuild()

    def add_node(self, node: int, degree: int) -> None:
        """
        Register a new node; node ids must be added in increasing order starting at 0.
        """
        self._ensure_capacity(degree)
        bucket = self.buckets.setdefault(degree, [])
        self._position.append(len(bucket))
        bucket.append(node)
        self._update(degree, 1)

    def move(self, node: int, old_degree: int, new_degree: int) -> None:
        """
        Move a node from bucket `old_degree` to bucket `new_degree` in constant time plus two index updates.
        """
        self._ensure_capacity(new_degree)
        bucket = self.buckets[old_degree]
        position = self._position[node]
        last = bucket.pop()
        if last != node:
            bucket[position] = last
            self._position[last] = position
        self._update(old_degree, -1)
        bucket = self.buckets.setdefault(new_degree, [])
        self._position[node] = len(bucket)
        bucket.append(node)
        self._update(new_degree, 1)

    def sample(self, u: float) -> Optional[int]:
        """
        Node drawn with probability f(deg) / sum of f(deg) over all nodes, for a uniform `u` in [0, 1). The residual of
        the class lookup selects the node within the class, so one uniform is consumed per draw.

        Args:
            u: uniform variate in [0, 1)

        Returns:
            node id, or None if rounding pointed outside the populated classes (the caller draws again)
        """
        degree, residual = self.index.find(u * self.index.total)
        if degree > self.index.capacity:
            return None
        weight = self._weights[degree]
        count = self.counts[degree]
        if weight <= 0 or count <= 0:
            return None
        position = int(residual / weight)
        if position >= count:
            position = count - 1
        return self.buckets[degree][position]

    def rebuild(self) -> None:
        """
        Recompute the index from the exact counts, removing accumulated floating-point drift.
        """
        self.index.rebuild(self.class_weights().tolist())
        self.rebuilds += 1
