"""Fairness predicates and cost-profile utilities.

Every predicate returns a :class:`FairnessWitness`, which is truthy iff the
property holds.  On failure the witness names an offending agent pair and the
chore subset that demonstrates the violation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate, combinations
from math import comb
from typing import Optional, Sequence

from .costs import mask_to_list, popcount
from .errors import InvalidAllocation, InvalidParameter, TooLargeForExhaustiveCheck
from .instance import Allocation, Instance, check_compatible

MAX_REMOVAL_SUBSETS = 1 << 20


@dataclass(frozen=True)
class Violation:
    envier: int
    envied: Optional[int]
    subset: int  # chore bitmask

    def as_dict(self) -> dict:
        return {"envier": self.envier, "envied": self.envied, "subset": mask_to_list(self.subset)}


@dataclass(frozen=True)
class FairnessWitness:
    verdict: bool
    violator: Optional[Violation] = None

    def __bool__(self):
        return self.verdict


OK = FairnessWitness(True)


def social_cost(inst: Instance, alloc: Allocation) -> int:
    return alloc.social_cost(inst)


def is_ef1(inst: Instance, alloc: Allocation) -> FairnessWitness:
    """EF1: some single removal from A_i brings c_i(A_i) down to c_i(A_j)."""
    check_compatible(inst, alloc)
    for i, Ai in enumerate(alloc.bundles):
        if not Ai:
            continue
        c = inst.costs[i]
        best = min(c.eval(Ai & ~(1 << t)) for t in mask_to_list(Ai))
        for j, Aj in enumerate(alloc.bundles):
            if j != i and best > c.eval(Aj):
                return FairnessWitness(False, Violation(i, j, Ai))
    return OK


def parse_beta(beta) -> Fraction:
    if isinstance(beta, tuple):
        beta = Fraction(*beta)
    try:
        beta = Fraction(beta)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidParameter(f"cannot read beta from {beta!r}") from exc
    if not 0 < beta <= 1:
        raise InvalidParameter(f"beta must lie in (0, 1], got {beta}")
    return beta


def is_beta_efkx(inst: Instance, alloc: Allocation, beta=1, k: int = 1) -> FairnessWitness:
    """beta * c_i(A_i - T) <= c_i(A_j) for every size-k T inside A_i, |A_i| >= k."""
    check_compatible(inst, alloc)
    beta = parse_beta(beta)
    if k < 1:
        raise InvalidParameter("k must be a positive integer")
    for i, Ai in enumerate(alloc.bundles):
        size = popcount(Ai)
        if size < k:
            continue
        if comb(size, k) > MAX_REMOVAL_SUBSETS:
            raise TooLargeForExhaustiveCheck(f"C({size}, {k}) removal sets")
        c = inst.costs[i]
        # the worst T leaves the costliest remainder
        worst_T, worst = 0, -1
        for T in combinations(mask_to_list(Ai), k):
            Tm = sum(1 << t for t in T)
            v = c.eval(Ai & ~Tm)
            if v > worst:
                worst_T, worst = Tm, v
        for j, Aj in enumerate(alloc.bundles):
            if j != i and beta.numerator * worst > beta.denominator * c.eval(Aj):
                return FairnessWitness(False, Violation(i, j, worst_T))
    return OK


def is_efx(inst: Instance, alloc: Allocation) -> FairnessWitness:
    return is_beta_efkx(inst, alloc, 1, 1)


def is_mms_fair(inst: Instance, alloc: Allocation, shares: Sequence[int]) -> FairnessWitness:
    check_compatible(inst, alloc)
    if len(shares) != inst.n:
        raise InvalidAllocation(f"expected {inst.n} shares, got {len(shares)}")
    for i, Ai in enumerate(alloc.bundles):
        if inst.cost(i, Ai) > shares[i]:
            return FairnessWitness(False, Violation(i, None, Ai))
    return OK


class Lorenz(enum.Enum):
    DOMINATES = "dominates"
    DOMINATED_BY = "dominated_by"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def sorted_profile(costs: Sequence[int]) -> list[int]:
    return sorted(costs, reverse=True)


def lorenz_compare(p: Sequence[int], q: Sequence[int]) -> Lorenz:
    """Compare two cost profiles by prefix sums of their nonincreasing sorts.

    Lower prefix sums are better for chores, so ``p`` dominates ``q`` when
    every prefix sum of ``p`` is at most that of ``q``.
    """
    if len(p) != len(q):
        raise ValueError(f"profiles of different lengths: {len(p)} vs {len(q)}")
    p, q = sorted_profile(p), sorted_profile(q)
    if p == q:
        return Lorenz.EQUAL
    ps, qs = list(accumulate(p)), list(accumulate(q))
    if all(a <= b for a, b in zip(ps, qs)):
        return Lorenz.DOMINATES
    if all(a >= b for a, b in zip(ps, qs)):
        return Lorenz.DOMINATED_BY
    return Lorenz.INCOMPARABLE
