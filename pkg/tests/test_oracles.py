import random

import pytest
from hypothesis import given, settings

from chorediv.algorithms import social_cost_min
from chorediv.costs import Cardinality, CostOracle, CoverageMax, PartitionComplement, Table, Threshold
from chorediv.errors import InputNotSCM, NoDecrementFound, NotIdenticalCosts, TooLargeForExhaustiveCheck
from chorediv.fairness import is_efx
from chorediv.instance import Allocation, Instance
from chorediv.io import builtin_instance, builtin_allocation
from chorediv.oracles import (balance_scm_identical, brute_is_pareto_efficient, brute_leximax_minus,
                              brute_lorenz_dominating, brute_min_prefix_sums, brute_min_social_cost,
                              brute_minimax_share, enumerate_allocations, find_decrement_chore)

from conftest import py_allocations, seeds, small_instance


@pytest.mark.parametrize("n,m,count", [(2, 3, 8), (3, 11, 177147), (1, 5, 1)])
def test_enumeration_counts(n, m, count):
    seen = set()
    for a in enumerate_allocations(n, m):
        assert a.complete
        seen.add(a.bundles)
    assert len(seen) == count


def test_enumeration_order_and_bound():
    first = [a.bundles for a in enumerate_allocations(2, 2)]
    assert first == [(0b11, 0), (0b01, 0b10), (0b10, 0b01), (0, 0b11)]
    with pytest.raises(TooLargeForExhaustiveCheck):
        next(enumerate_allocations(3, 13))
    with pytest.raises(TooLargeForExhaustiveCheck):
        brute_min_social_cost(Instance.from_specs([Cardinality()] * 2, 8), bound=100)


def test_brute_examples(inc1, inc2):
    assert brute_min_social_cost(inc1)[0] == 5
    assert brute_min_social_cost(builtin_instance("no-po-efx", k=2))[0] == 1
    zero = Instance.from_specs([Threshold(6)] * 3, 6)
    assert brute_min_social_cost(zero)[0] == 0
    assert brute_minimax_share(inc1, 0) == 4
    assert [brute_minimax_share(inc2, i) for i in range(3)] == [4, 4, 2]
    one = Instance.from_specs([Threshold(2)], 6)
    assert brute_minimax_share(one, 0) == 4


def test_pareto_examples():
    inst = builtin_instance("no-po-efx", k=1)
    assert brute_is_pareto_efficient(inst, builtin_allocation("no-po-efx-po", k=1))
    assert not brute_is_pareto_efficient(inst, Allocation.from_sets([[0, 1], [2]], 3))
    assert brute_is_pareto_efficient(inst, social_cost_min(inst))


def test_lorenz_oracle_examples(inc1):
    assert brute_lorenz_dominating(inc1).sorted_profile(inc1) == [2, 2, 1]
    zero = Instance.from_specs([Threshold(5)] * 2, 5)
    assert brute_lorenz_dominating(zero).cost_profile(zero) == [0, 0]


def test_lorenz_may_not_exist():
    # additive costs (2, 3) and (1, 2): sorted prefix sums are
    # (5,5) (2,4) (3,4) (3,3); none meets the pointwise minimum (2,3)
    inst = Instance.from_specs([Table((0, 2, 3, 5)), Table((0, 1, 2, 3))], 2, certify=False)
    assert [int(v) for v in brute_min_prefix_sums(inst)] == [2, 3]
    assert brute_lorenz_dominating(inst) is None


def _prefix(p):
    out, acc = [], 0
    for v in p:
        acc += v
        out.append(acc)
    return out


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_numpy_oracles_match_python(seed):
    inst = small_instance(seed, max_m=6)
    allocs = list(py_allocations(inst.n, inst.m))
    costs = [a.cost_profile(inst) for a in allocs]
    assert brute_min_social_cost(inst)[0] == min(sum(c) for c in costs)
    for i in range(inst.n):
        want = min(max(inst.cost(i, b) for b in a.bundles) for a in allocs)
        assert brute_minimax_share(inst, i) == want
    target = allocs[seed % len(allocs)]
    tc = target.cost_profile(inst)
    dominated = any(all(x <= y for x, y in zip(c, tc)) and c != tc for c in costs)
    assert brute_is_pareto_efficient(inst, target) == (not dominated)
    low = [min(_prefix(sorted(c, reverse=True))[k] for c in costs) for k in range(inst.n)]
    assert [int(v) for v in brute_min_prefix_sums(inst)] == low


def test_leximax_examples():
    card = Instance.from_specs([Cardinality()] * 2, 4)
    assert brute_leximax_minus(card).cost_profile(card) == [2, 2]
    demo = builtin_instance("exact3cover-demo")
    assert is_efx(demo, brute_leximax_minus(demo))
    single = Instance.from_specs([Threshold(1)], 4)
    assert brute_leximax_minus(single).bundles == (0b1111,)
    with pytest.raises(NotIdenticalCosts):
        brute_leximax_minus(builtin_instance("incomparable-1"))


def test_find_decrement_examples():
    assert find_decrement_chore(CostOracle(Threshold(3), 6), {1, 2, 3, 4, 5}) == 1
    pair = CostOracle(PartitionComplement.of(((0, 1), 1), ((2,), 0)), 3)
    assert find_decrement_chore(pair, {0, 1}) == 0


def test_find_decrement_fails_on_coverage():
    # brute-force search over coverage costs for a set with no unit decrement
    rng = random.Random(7)
    found = False
    for _ in range(200):
        m = rng.randint(3, 6)
        sets = [frozenset(rng.sample(range(m), rng.randint(1, m))) for _ in range(rng.randint(2, 3))]
        c = CostOracle(CoverageMax(tuple(sets)), m, certify=False)
        for S in range(1, 1 << m):
            if c.eval(S) > 0 and all(c.eval(S & ~(1 << a)) != c.eval(S) - 1
                                     for a in range(m) if S >> a & 1):
                with pytest.raises(NoDecrementFound):
                    find_decrement_chore(c, S)
                found = True
                break
        if found:
            break
    assert found


def test_balance_examples():
    card = Instance.from_specs([Cardinality()] * 3, 7)
    skew = Allocation.from_sets([[0, 1, 2, 3, 4], [5], [6]], 7)
    assert sorted(balance_scm_identical(card, skew).cost_profile(card)) == [2, 2, 3]
    even = Allocation.from_sets([[0, 1, 2], [3, 4], [5, 6]], 7)
    assert balance_scm_identical(card, even) == even
    thr = Instance.from_specs([Threshold(2)] * 2, 6)
    a = Allocation.from_sets([[0, 1, 2, 3], [4, 5]], 6)
    assert a.cost_profile(thr) == [2, 0]
    assert balance_scm_identical(thr, a).cost_profile(thr) == [1, 1]


def test_balance_rejects_non_scm():
    thr = Instance.from_specs([Threshold(2)] * 2, 6)
    with pytest.raises(InputNotSCM):
        balance_scm_identical(thr, Allocation.from_sets([[0, 1, 2, 3, 4, 5], []], 6))


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_balance_potential_decreases(seed):
    inst = small_instance(seed, family="identical", ns=(2, 3, 4), max_m=8)
    start = social_cost_min(inst)
    trace = []
    out = balance_scm_identical(inst, start, trace=trace)
    prof = out.cost_profile(inst)
    assert max(prof) - min(prof) <= 1
    assert sum(prof) == start.social_cost(inst)
    pots = [sum(v * v for v in start.cost_profile(inst))] + trace
    assert all(b < a for a, b in zip(pots, pots[1:]))
    assert len(trace) <= inst.n * inst.m ** 2
