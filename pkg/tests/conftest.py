import itertools

import pytest
from hypothesis import strategies as st

from binpack.core import ProblemInstance


def inst(capacity, weights, name=""):
    return ProblemInstance(capacity, tuple(weights), name)


@st.composite
def instances(draw, max_n=60, max_capacity=200):
    capacity = draw(st.integers(1, max_capacity))
    weights = draw(st.lists(st.integers(1, capacity), max_size=max_n))
    return ProblemInstance(capacity, tuple(weights), "hyp")


def set_partitions(items):
    """Every partition of ``items`` into non-empty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part


def brute_force_opt(instance):
    """Smallest feasible partition, by enumerating all of them."""
    if instance.n == 0:
        return 0
    best = instance.n
    for part in set_partitions(list(range(instance.n))):
        if len(part) < best and all(
            sum(instance.weights[i] for i in block) <= instance.capacity for block in part
        ):
            best = len(part)
    return best


@pytest.fixture
def example():
    return inst(10, [5, 6, 4, 5], "example")
