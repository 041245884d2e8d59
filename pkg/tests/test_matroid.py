import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chorediv.costs import Cardinality, CostOracle, PartitionComplement, Threshold, full_mask, popcount
from chorediv.io import random_partition_complement, random_supermodular_spec
from chorediv.matroid import (MatroidView, is_independent, kfold_union_rank, matroid_partition,
                              rank)
from chorediv.oracles import brute_max_rank_partition, brute_union_rank

from conftest import seeds


def view(spec, m):
    return MatroidView(CostOracle(spec, m))


def test_rank_examples():
    assert all(rank(view(Cardinality(), 5), S) == 0 for S in range(32))
    t = view(Threshold(3), 6)
    assert rank(t, {0, 1, 2, 3, 4}) == 3
    assert rank(t, {0, 1}) == 2


def test_independence_examples():
    t = view(Threshold(3), 6)
    assert is_independent(t, {0, 1, 2})
    assert not is_independent(t, {0, 1, 2, 3})
    pair = view(PartitionComplement.of(((0, 1), 1), ((2,), 0)), 3)
    assert not is_independent(pair, {0, 1})
    assert is_independent(pair, {1})


def test_partition_incomparable_instance():
    views = [view(Cardinality(), 11), view(Threshold(3), 11), view(Threshold(3), 11)]
    part = matroid_partition(views)
    assert popcount(part.unassigned) == 5
    assert [popcount(b) for b in part.bundles] == [0, 3, 3]
    # independently: the best sum of ranks over all 3-partitions is 6
    assert brute_max_rank_partition(views) == 6


def test_all_cardinality_leaves_everything():
    part = matroid_partition([view(Cardinality(), 6)] * 3)
    assert part.bundles == (0, 0, 0)
    assert part.unassigned == full_mask(6)


@pytest.mark.parametrize("k,m", [(2, 5), (4, 4), (0, 3), (3, 9)])
def test_single_threshold_basis(k, m):
    part = matroid_partition([view(Threshold(k), m)])
    assert part.size == min(k, m)


def test_kfold_examples():
    assert kfold_union_rank(view(Threshold(3), 11), 3) == 9
    assert kfold_union_rank(view(Cardinality(), 7), 4) == 0
    with pytest.raises(ValueError):
        kfold_union_rank(view(Cardinality(), 7), 0)


def test_partial_ground():
    v = view(Threshold(2), 6)
    part = matroid_partition([v, v], ground={0, 2, 4})
    assert part.basis | part.unassigned == 0b10101
    assert part.size == 3


@given(seeds, st.integers(1, 3), st.integers(0, 10))
@settings(max_examples=60, deadline=None)
def test_kfold_matches_union_formula(seed, k, m):
    v = view(random_partition_complement(m, random.Random(seed)), m)
    assert kfold_union_rank(v, k) == brute_union_rank([v] * k)


@given(seeds, st.integers(1, 3), st.integers(0, 8))
@settings(max_examples=80, deadline=None)
def test_partition_is_maximum_and_independent(seed, n, m):
    rng = random.Random(seed)
    views = [view(random_supermodular_spec(m, rng), m) for _ in range(n)]
    ground = rng.randrange(1 << m) if m else 0
    part = matroid_partition(views, ground)
    # bundles disjoint, cover ground with the leftovers
    acc = 0
    for b in part.bundles:
        assert acc & b == 0
        acc |= b
    assert acc | part.unassigned == ground and acc & part.unassigned == 0
    for v, b in zip(views, part.bundles):
        assert v.is_independent(b)
        for e in range(m):
            if b >> e & 1:
                assert v.is_independent(b & ~(1 << e))
    assert part.size == brute_union_rank(views, ground)
    if ground == full_mask(m) and n ** m <= 1 << 16:
        assert part.size == brute_max_rank_partition(views)


def test_deterministic():
    views = [view(Threshold(2), 9), view(PartitionComplement.of(((0, 1, 2, 3), 1), ((4, 5, 6, 7, 8), 2)), 9)]
    assert matroid_partition(views) == matroid_partition(views)
