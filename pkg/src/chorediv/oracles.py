"""Exhaustive reference implementations for small instances.

These enumerate all n^m complete allocations and serve as independent
checks on the polynomial-time solvers.  Enumeration streams over chunks of
assignment vectors in lexicographic order (chore 0 is the most significant
digit), so memory stays bounded and argmin/argmax ties resolve to the first
allocation in that order.
"""
from __future__ import annotations

from itertools import product
from typing import Iterator, Optional, Sequence

import numpy as np

from .costs import ChoreSet, CostOracle, as_mask, full_mask, mask_to_list, popcount
from .errors import (InputNotSCM, InternalInvariantViolation, InvalidParameter, NoDecrementFound,
                     NotIdenticalCosts, TooLargeForExhaustiveCheck)
from .instance import Allocation, Instance, check_compatible
from .matroid import MatroidView

DEFAULT_BOUND = 1 << 20
CHUNK = 1 << 15


def _check_bound(n: int, m: int, bound: int) -> None:
    if n ** m > bound:
        raise TooLargeForExhaustiveCheck(f"{n}^{m} allocations exceed the bound {bound}")


def enumerate_allocations(n: int, m: int, bound: int = DEFAULT_BOUND) -> Iterator[Allocation]:
    _check_bound(n, m, bound)
    for assign in product(range(n), repeat=m):
        bundles = [0] * n
        for chore, agent in enumerate(assign):
            bundles[agent] |= 1 << chore
        yield Allocation(tuple(bundles), m)


def _mask_chunks(n: int, m: int, bound: int) -> Iterator[np.ndarray]:
    """Bundle masks of every complete allocation, shape (rows, n) per chunk."""
    _check_bound(n, m, bound)
    total = n ** m
    weights = [n ** (m - 1 - j) for j in range(m)]
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        masks = np.zeros((idx.size, n), dtype=np.int64)
        for j, w in enumerate(weights):
            digit = (idx // w) % n
            masks[np.arange(idx.size), digit] |= 1 << j
        yield masks


def _cost_chunks(inst: Instance, bound: int):
    """(masks, costs) per chunk; costs[r, i] = c_i(bundle i of allocation r)."""
    tables = [c.table() for c in inst.costs]
    for masks in _mask_chunks(inst.n, inst.m, bound):
        costs = np.stack([tables[i][masks[:, i]] for i in range(inst.n)], axis=1)
        yield masks, costs


def _row_alloc(masks: np.ndarray, r: int, m: int) -> Allocation:
    return Allocation(tuple(int(x) for x in masks[r]), m)


def brute_min_social_cost(inst: Instance, bound: int = DEFAULT_BOUND) -> tuple[int, Allocation]:
    best, arg = None, None
    for masks, costs in _cost_chunks(inst, bound):
        sc = costs.sum(axis=1)
        r = int(np.argmin(sc))
        if best is None or sc[r] < best:
            best, arg = int(sc[r]), _row_alloc(masks, r, inst.m)
    return best, arg


def brute_minimax_share(inst: Instance, i: int, bound: int = DEFAULT_BOUND) -> int:
    """min over complete allocations of max_j c_i(X_j)."""
    table = inst.costs[i].table()
    best = None
    for masks in _mask_chunks(inst.n, inst.m, bound):
        worst = table[masks].max(axis=1).min()
        best = int(worst) if best is None else min(best, int(worst))
    return best


def brute_is_pareto_efficient(inst: Instance, alloc: Allocation, bound: int = DEFAULT_BOUND) -> bool:
    check_compatible(inst, alloc)
    if not alloc.complete:
        raise InvalidParameter("Pareto efficiency is defined for complete allocations")
    a = np.asarray(alloc.cost_profile(inst), dtype=np.int64)
    for _, costs in _cost_chunks(inst, bound):
        dominated = (costs <= a).all(axis=1) & (costs < a).any(axis=1)
        if dominated.any():
            return False
    return True


def _prefix_sums(costs: np.ndarray) -> np.ndarray:
    return np.cumsum(-np.sort(-costs, axis=1), axis=1)


def brute_min_prefix_sums(inst: Instance, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """Pointwise minimum, over all complete allocations, of sorted-profile prefix sums."""
    best = None
    for _, costs in _cost_chunks(inst, bound):
        low = _prefix_sums(costs).min(axis=0)
        best = low if best is None else np.minimum(best, low)
    return best


def brute_lorenz_dominating(inst: Instance, bound: int = DEFAULT_BOUND) -> Optional[Allocation]:
    """An allocation whose prefix sums meet the pointwise minimum, or None."""
    target = brute_min_prefix_sums(inst, bound)
    for masks, costs in _cost_chunks(inst, bound):
        hit = np.flatnonzero((_prefix_sums(costs) == target).all(axis=1))
        if hit.size:
            return _row_alloc(masks, int(hit[0]), inst.m)
    return None


def brute_leximax_minus(inst: Instance, bound: int = DEFAULT_BOUND) -> Allocation:
    """Maximise the ascending sequence of (cost, size) tuples lexicographically.

    Identical costs only.  Each tuple is packed as cost * (m + 1) + size,
    which preserves the lexicographic order on tuples.
    """
    if not inst.identical:
        raise NotIdenticalCosts()
    m = inst.m
    table = inst.costs[0].table()
    best_key, best = None, None
    for masks in _mask_chunks(inst.n, m, bound):
        keys = np.sort(table[masks] * (m + 1) + np.bitwise_count(masks.astype(np.uint64)), axis=1)
        cand = np.arange(keys.shape[0])
        for col in range(keys.shape[1]):
            col_vals = keys[cand, col]
            cand = cand[col_vals == col_vals.max()]
        r = int(cand[0])
        key = tuple(int(v) for v in keys[r])
        if best_key is None or key > best_key:
            best_key, best = key, _row_alloc(masks, r, m)
    return best


def brute_union_rank(views: Sequence[MatroidView], ground: ChoreSet | None = None) -> int:
    """min over T inside ground of |ground - T| + sum_i r_i(T), by enumeration."""
    m = views[0].m
    g = full_mask(m) if ground is None else as_mask(ground, m)
    T = np.arange(1 << m, dtype=np.int64)
    T = T[(T & ~g) == 0]
    size = np.bitwise_count(T.astype(np.uint64)).astype(np.int64)
    total = popcount(g) - size
    for v in views:
        total = total + size - v.oracle.table()[T]
    return int(total.min())


def brute_max_rank_partition(views: Sequence[MatroidView], bound: int = DEFAULT_BOUND) -> int:
    """max over complete n-partitions of sum_i r_i(A_i)."""
    n, m = len(views), views[0].m
    tables = [v.oracle.table() for v in views]
    best = 0
    for masks in _mask_chunks(n, m, bound):
        size = np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
        ranks = sum(size[:, i] - tables[i][masks[:, i]] for i in range(n))
        best = max(best, int(ranks.max()))
    return best


def find_decrement_chore(oracle: CostOracle, chores: ChoreSet) -> int:
    """Lowest-index a in S with c(S - a) = c(S) - 1."""
    S = as_mask(chores, oracle.m)
    base = oracle.eval(S)
    if base <= 0:
        raise InvalidParameter("the set must have positive cost")
    for a in mask_to_list(S):
        if oracle.eval(S & ~(1 << a)) == base - 1:
            return a
    raise NoDecrementFound(f"no single removal lowers the cost of {mask_to_list(S)}")


def balance_scm_identical(inst: Instance, alloc: Allocation, bound: int = DEFAULT_BOUND,
                          trace: Optional[list] = None) -> Allocation:
    """Move decrement chores from the costliest to the cheapest bundle until
    bundle costs differ by at most one.

    Each move keeps social cost minimal and strictly lowers the sum of squared
    bundle costs.  ``trace`` collects that potential after every move.
    """
    if not inst.identical:
        raise NotIdenticalCosts()
    check_compatible(inst, alloc)
    if not alloc.complete:
        raise InputNotSCM("allocation is not complete")
    c = inst.costs[0]
    bundles = list(alloc.bundles)
    vals = [c.eval(b) for b in bundles]
    if inst.n ** inst.m <= bound:
        cstar, _ = brute_min_social_cost(inst, bound)
        if sum(vals) != cstar:
            raise InputNotSCM(f"social cost {sum(vals)} exceeds the minimum {cstar}")

    limit = inst.n * inst.m ** 2
    moves = 0
    while True:
        j = max(range(inst.n), key=lambda p: (vals[p], -p))
        k = min(range(inst.n), key=lambda p: (vals[p], p))
        if vals[j] <= vals[k] + 1:
            break
        if moves >= limit:
            raise InternalInvariantViolation(f"rebalancing exceeded {limit} transfers")
        t = find_decrement_chore(c, bundles[j])
        bundles[j] &= ~(1 << t)
        bundles[k] |= 1 << t
        vals[j], vals[k] = c.eval(bundles[j]), c.eval(bundles[k])
        moves += 1
        if trace is not None:
            trace.append(sum(v * v for v in vals))
    return Allocation(tuple(bundles), inst.m)
