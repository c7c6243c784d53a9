"""Shared helpers for the test modules."""

import itertools

from hypothesis import strategies as st

from gowers_parseval.groups import GroupSpec


def vertex(label: str) -> int:
    """Vertex index of ``w_1 w_2 ... w_d`` written left to right (``w_i`` is bit i-1)."""
    return sum(int(b) << i for i, b in enumerate(label))


def small_groups(max_order: int = 12, max_rank: int = 3):
    """Every product of cyclic factors (orders >= 2, non-decreasing) up to ``max_order``."""
    out = [GroupSpec((1,))]
    for rank in range(1, max_rank + 1):
        for orders in itertools.combinations_with_replacement(range(2, max_order + 1), rank):
            size = 1
            for n in orders:
                size *= n
            if size <= max_order:
                out.append(GroupSpec(orders))
    return out


groups = st.sampled_from(small_groups(8))
seeds = st.integers(0, 2**32 - 1)
