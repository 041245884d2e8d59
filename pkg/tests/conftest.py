import random
from itertools import product

import pytest
from hypothesis import strategies as st

from chorediv.instance import Allocation
from chorediv.io import builtin_instance, random_instance


def py_allocations(n, m):
    """Plain-Python enumeration, independent of the numpy oracles."""
    for assign in product(range(n), repeat=m):
        bundles = [0] * n
        for chore, agent in enumerate(assign):
            bundles[agent] |= 1 << chore
        yield Allocation(tuple(bundles), m)


def py_min_social_cost(inst):
    return min(a.social_cost(inst) for a in py_allocations(inst.n, inst.m))


def small_instance(seed, family="supermodular", ns=(2, 3), max_m=8):
    rng = random.Random(seed)
    return random_instance(rng.choice(ns), rng.randint(0, max_m), seed, family)


seeds = st.integers(min_value=0, max_value=10**6)


@pytest.fixture(scope="session")
def inc1():
    return builtin_instance("incomparable-1")


@pytest.fixture(scope="session")
def inc2():
    return builtin_instance("incomparable-2")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
