from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chorediv.costs import (Cardinality, CostOracle, CoverageMax, PartitionComplement, Table,
                            Threshold, as_mask, marginal, popcount, validate_binary_marginals,
                            validate_monotone, validate_supermodular)
from chorediv.errors import (ChoreAlreadyPresent, InvalidChore, InvalidSpec,
                             TooLargeForExhaustiveCheck)
from chorediv.io import random_partition_complement

from conftest import seeds

PAIR = PartitionComplement.of(((0, 1), 1), ((2,), 0))


def test_eval_threshold_five_chores():
    assert CostOracle(Threshold(3), 6).eval({0, 1, 2, 3, 4}) == 2


@pytest.mark.parametrize("spec", [Cardinality(), Threshold(2), PAIR, CoverageMax.of({0, 1}),
                                  Table((0, 1, 1, 1, 1, 2, 2, 2))])
def test_eval_empty_is_zero(spec):
    assert CostOracle(spec, 3).eval(set()) == 0


def test_pair_costs_one_when_complete():
    c = CostOracle(PAIR, 3)
    assert c.eval({0, 1}) == 1
    assert marginal(c, set(), 0) == 0
    assert c.eval({0, 1, 2}) == 2


def test_invalid_chore():
    c = CostOracle(Cardinality(), 3)
    with pytest.raises(InvalidChore):
        c.eval({3})
    with pytest.raises(InvalidChore):
        c.eval(1 << 5)
    with pytest.raises(InvalidChore):
        marginal(c, set(), 7)


def test_marginal_errors_and_cardinality():
    c = CostOracle(Cardinality(), 4)
    for S in range(16):
        for a in range(4):
            if S >> a & 1:
                with pytest.raises(ChoreAlreadyPresent):
                    marginal(c, S, a)
            else:
                assert marginal(c, S, a) == 1


def test_table_marginal_matches_differences():
    vals = (0, 1, 0, 1, 1, 2, 1, 3)
    c = CostOracle(Table(vals), 3)
    for S, a in product(range(8), range(3)):
        if not S >> a & 1:
            assert marginal(c, S, a) == vals[S | 1 << a] - vals[S]


@pytest.mark.parametrize("spec,m", [
    (Threshold(-1), 3),
    (PartitionComplement.of(((0, 1), 1)), 3),           # does not cover chore 2
    (PartitionComplement.of(((0, 1), 1), ((1, 2), 0)), 3),  # overlap
    (PartitionComplement.of(((0, 1), 3), ((2,), 0)), 3),    # cap above block size
    (CoverageMax.of({0, 5}), 3),
    (Table((0, 1, 1)), 2),
    (Table((1, 1, 1, 1)), 2),
])
def test_spec_invariants(spec, m):
    with pytest.raises((InvalidSpec, InvalidChore)):
        CostOracle(spec, m)


def test_validators_cardinality_and_bad_table():
    assert validate_binary_marginals(CostOracle(Cardinality(), 4))
    assert validate_supermodular(CostOracle(Cardinality(), 4))
    bad = CostOracle(Table((0, 2, 0, 2)), 2)
    assert not validate_binary_marginals(bad)
    assert not bad.certified_binary and not bad.certified_supermodular


def test_threshold_supermodular_m6():
    assert validate_supermodular(CostOracle(Threshold(3), 6))


def test_coverage_not_supermodular():
    c = CostOracle(CoverageMax.of({0, 1}, {1, 2}), 3)
    assert validate_binary_marginals(c)
    assert not validate_supermodular(c)
    assert c.certified_binary and not c.certified_supermodular


def test_validator_bound():
    with pytest.raises(TooLargeForExhaustiveCheck):
        validate_binary_marginals(CostOracle(Cardinality(), 17))
    assert validate_binary_marginals(CostOracle(Cardinality(), 17), bound=17)


def _py_supermodular(c, m):
    """S subset-of T form, straight from the definition."""
    for T in range(1 << m):
        S = T
        while True:
            for a in range(m):
                if not T >> a & 1:
                    if c.eval(S | 1 << a) - c.eval(S) > c.eval(T | 1 << a) - c.eval(T):
                        return False
            if S == 0:
                break
            S = (S - 1) & T
    return True


@given(seeds, st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_local_exchange_matches_subset_form(seed, m):
    import random
    rng = random.Random(seed)
    sets = [frozenset(rng.sample(range(m), rng.randint(1, m))) for _ in range(rng.randint(1, 3))]
    for spec in (CoverageMax(tuple(sets)), random_partition_complement(m, rng)):
        c = CostOracle(spec, m, certify=False)
        assert validate_supermodular(c) == _py_supermodular(c, m)


@given(seeds, st.integers(0, 12))
@settings(max_examples=60, deadline=None)
def test_structural_families_bounded_monotone(seed, m):
    import random
    rng = random.Random(seed)
    for spec in (Cardinality(), Threshold(rng.randint(0, m)), random_partition_complement(m, rng)):
        c = CostOracle(spec, m)
        t = c.table()
        assert validate_binary_marginals(c) and validate_supermodular(c)
        assert validate_monotone(c)
        assert all(0 <= t[S] <= popcount(S) for S in range(1 << m))


@given(seeds, st.integers(0, 10))
@settings(max_examples=30, deadline=None)
def test_vectorised_eval_agrees(seed, m):
    import random
    rng = random.Random(seed)
    sets = [frozenset(rng.sample(range(m), rng.randint(0, m))) for _ in range(rng.randint(0, 3))]
    for spec in (Cardinality(), Threshold(rng.randint(0, m)), random_partition_complement(m, rng),
                 CoverageMax(tuple(sets))):
        c = CostOracle(spec, m)
        t = c.table()
        for S in range(1 << m):
            assert t[S] == c.eval(S)


def test_as_mask_forms():
    assert as_mask([0, 2], 3) == 0b101
    assert as_mask(0b101, 3) == 0b101
    with pytest.raises(InvalidChore):
        as_mask(-1, 3)


def test_oracle_equality_by_spec():
    assert CostOracle(Threshold(2), 5) == CostOracle(Threshold(2), 5)
    assert CostOracle(Threshold(2), 5) != CostOracle(Threshold(2), 6)
    assert CostOracle(PAIR, 3) == CostOracle(PartitionComplement.of(((0, 1), 1), ((2,), 0)), 3)
