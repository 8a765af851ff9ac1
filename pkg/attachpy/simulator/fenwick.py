from typing import List, Sequence, Tuple

from attachpy.exceptions import InvalidParameterError


class FenwickTree:
    """
    Fenwick (binary indexed) tree of non-negative float weights over the indices 1..capacity, supporting point
    updates, prefix sums and the inverse lookup used for weighted sampling in logarithmic time. The capacity can be
    grown; growing rebuilds the tree in linear time.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise InvalidParameterError(f"capacity must be positive, got {capacity}")
        self._values = [0.0] * (capacity + 1)
        self._tree = [0.0] * (capacity + 1)
        self._capacity = capacity
        self._top = 1 << (capacity.bit_length() - 1)

    @property
    def capacity(self) -> int:
        return self._capacity

    def __len__(self) -> int:
        return self._capacity

    def __getitem__(self, index: int) -> float:
        return self._values[index]

    def increment(self, index: int, delta: float) -> None:
        self._values[index] += delta
        tree = self._tree
        capacity = self._capacity
        while index <= capacity:
            tree[index] += delta
            index += index & -index

    def set_value(self, index: int, value: float) -> None:
        self.increment(index, value - self._values[index])

    def prefix_sum(self, index: int) -> float:
        """
        Sum of the weights at indices 1..index.
        """
        tree = self._tree
        total = 0.0
        while index > 0:
            total += tree[index]
            index -= index & -index
        return total

    @property
    def total(self) -> float:
        return self.prefix_sum(self._capacity)

    def find(self, u: float) -> Tuple[int, float]:
        """
        Smallest index whose prefix sum exceeds `u`, together with the part of `u` left over inside that index's
        weight. An index above the capacity means `u` is not below the total.

        Args:
            u: value in [0, total)

        Returns:
            index and residual in [0, weight of index)
        """
        tree = self._tree
        capacity = self._capacity
        position = 0
        step = self._top
        while step:
            following = position + step
            if following <= capacity and tree[following] <= u:
                position = following
                u -= tree[following]
            step >>= 1
        return position + 1, u

    def rebuild(self, values: Sequence[float]) -> None:
        """
        Replace all weights, `values[0]` being the weight of index 1, and rebuild the tree in linear time. The
        capacity becomes `len(values)`.
        """
        capacity = len(values)
        if capacity < 1:
            raise InvalidParameterError("cannot rebuild an empty tree")
        self._values = [0.0] + [float(x) for x in values]
        tree: List[float] = list(self._values)
        for index in range(1, capacity + 1):
            parent = index + (index & -index)
            if parent <= capacity:
                tree[parent] += tree[index]
        self._tree = tree
        self._capacity = capacity
        self._top = 1 << (capacity.bit_length() - 1)

    def grow(self, capacity: int) -> None:
        if capacity <= self._capacity:
            return
        values = self._values[1:] + [0.0] * (capacity - self._capacity)
        self.rebuild(values)
