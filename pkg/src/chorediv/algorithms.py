"""Solvers for binary supermodular chore division.

The four general solvers start from the zero-cost partial allocation found by
matroid partition (:func:`cost_min_partial_alloc`) and differ only in how the
leftover chores are handed out.  :func:`add_and_fix` handles identical costs
and needs only binary marginals.

Ties are always broken towards the lowest chore or agent index, so every
solver is a deterministic function of its instance.  Under ``__debug__`` the
solvers check their own postconditions.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

from .costs import full_mask, mask_to_list, popcount, validate_binary_marginals
from .errors import (InternalInvariantViolation, NotIdenticalCosts, TooLargeForExhaustiveCheck,
                     UncertifiedCosts)
from .fairness import is_ef1, is_efx, is_mms_fair
from .instance import Allocation, Instance
from .matroid import MatroidView, kfold_union_rank, matroid_partition

log = logging.getLogger(__name__)


class NoBinaryMarginalsCertificate(UserWarning):
    pass


def _require_certified(inst: Instance) -> None:
    if not inst.certified:
        raise UncertifiedCosts()


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def cost_min_partial_alloc(inst: Instance) -> Allocation:
    """Zero-cost partial allocation whose every completion minimises social cost."""
    _require_certified(inst)
    if inst.m == 0:
        return Allocation.empty(inst.n, 0)
    part = matroid_partition([MatroidView(c) for c in inst.costs])
    return Allocation(part.bundles, inst.m)


def min_social_cost(inst: Instance) -> int:
    """c* = m - rank of the union matroid on all chores."""
    return popcount(cost_min_partial_alloc(inst).unassigned)


def _check_scm(inst: Instance, alloc: Allocation, partial: Allocation) -> None:
    if not __debug__:
        return
    if not alloc.complete or not alloc.extends(partial):
        raise InternalInvariantViolation("output does not complete the partial allocation")
    if alloc.social_cost(inst) != popcount(partial.unassigned):
        raise InternalInvariantViolation("social cost differs from c*")


def social_cost_min(inst: Instance) -> Allocation:
    """Complete the partial allocation by handing every leftover chore to agent 0."""
    _require_certified(inst)
    if inst.n == 1:
        return Allocation((full_mask(inst.m),), inst.m)
    partial = cost_min_partial_alloc(inst)
    bundles = list(partial.bundles)
    bundles[0] |= partial.unassigned
    alloc = Allocation(tuple(bundles), inst.m)
    _check_scm(inst, alloc, partial)
    return alloc


def ef1_and_efficient(inst: Instance, trace: Optional[list] = None) -> Allocation:
    """Give each leftover chore to an agent who envies nobody.

    Such an agent exists at every step because any envy cycle could be
    resolved to beat the minimum social cost.  ``trace``, when given,
    receives the partial allocation before every assignment and at the end.
    """
    _require_certified(inst)
    if inst.n == 1:
        return Allocation((full_mask(inst.m),), inst.m)
    partial = cost_min_partial_alloc(inst)
    bundles = list(partial.bundles)
    U = partial.unassigned
    costs = inst.costs
    while U:
        if trace is not None:
            trace.append(Allocation(tuple(bundles), inst.m))
        for ell in range(inst.n):
            own = costs[ell].eval(bundles[ell])
            if all(own <= costs[ell].eval(B) for B in bundles):
                break
        else:
            raise InternalInvariantViolation("every agent envies someone; costs not supermodular?")
        t = _lowest(U)
        bundles[ell] |= 1 << t
        U &= ~(1 << t)
    alloc = Allocation(tuple(bundles), inst.m)
    if trace is not None:
        trace.append(alloc)
    _check_scm(inst, alloc, partial)
    if __debug__ and not is_ef1(inst, alloc):
        raise InternalInvariantViolation("EF1 output failed the EF1 check")
    return alloc


def minimax_share(inst: Instance, i: int) -> int:
    """tau_i = ceil((m - r_{i x n}([m])) / n) via the n-fold union of agent i's matroid."""
    c = inst.costs[i]
    if not c.certified_supermodular:
        raise UncertifiedCosts()
    n, m = inst.n, inst.m
    if m == 0:
        return 0
    if n == 1:
        return c.eval(full_mask(m))
    r = kfold_union_rank(MatroidView(c), n)
    return -(-(m - r) // n)


def minimax_shares(inst: Instance) -> list[int]:
    return [minimax_share(inst, i) for i in range(inst.n)]


def mms_and_efficient(inst: Instance) -> Allocation:
    """Fill agents 0..n-1 in turn while their cost stays below the minimax share."""
    _require_certified(inst)
    if inst.n == 1:
        return Allocation((full_mask(inst.m),), inst.m)
    partial = cost_min_partial_alloc(inst)
    shares = minimax_shares(inst)
    bundles = list(partial.bundles)
    U = partial.unassigned
    for i in range(inst.n):
        c = inst.costs[i]
        while U and c.eval(bundles[i]) < shares[i]:
            t = _lowest(U)
            bundles[i] |= 1 << t
            U &= ~(1 << t)
    if U:
        raise InternalInvariantViolation(
            f"{popcount(U)} chores left after every agent reached its share")
    alloc = Allocation(tuple(bundles), inst.m)
    _check_scm(inst, alloc, partial)
    if __debug__ and not is_mms_fair(inst, alloc, shares):
        raise InternalInvariantViolation("MMS output exceeds a minimax share")
    return alloc


def lorenz_targets(leftover: int, n: int) -> list[int]:
    """Split ``leftover`` as evenly as possible, the larger parts going first."""
    q, h = divmod(leftover, n)
    return [q + 1] * h + [q] * (n - h)


def lorenz_dominating(inst: Instance) -> Allocation:
    """Split the leftover chores as equally as possible; agent i gets alpha_i of them."""
    _require_certified(inst)
    if inst.n == 1:
        return Allocation((full_mask(inst.m),), inst.m)
    partial = cost_min_partial_alloc(inst)
    bundles = list(partial.bundles)
    left = mask_to_list(partial.unassigned)
    alpha = lorenz_targets(len(left), inst.n)
    pos = 0
    for i, a in enumerate(alpha):
        for t in left[pos:pos + a]:
            bundles[i] |= 1 << t
        pos += a
    alloc = Allocation(tuple(bundles), inst.m)
    _check_scm(inst, alloc, partial)
    if __debug__ and alloc.cost_profile(inst) != alpha:
        raise InternalInvariantViolation("Lorenz output profile differs from the target split")
    return alloc


@dataclass
class AddAndFixRun:
    allocation: Allocation
    iterations: int
    removals: int = 0
    history: list = field(default_factory=list)


def add_and_fix(inst: Instance) -> Allocation:
    return add_and_fix_run(inst).allocation


def add_and_fix_run(inst: Instance, *, record: bool = False,
                    on_iteration: Optional[Callable[[Allocation], None]] = None) -> AddAndFixRun:
    """EFX for identical monotone costs.

    Each outer iteration gives the lowest-index unassigned chore to a
    cheapest agent, then sheds chores from that bundle while some removal
    still leaves it costlier than the second-cheapest bundle.  Removed
    chores go back to the pool.
    """
    if not inst.identical:
        raise NotIdenticalCosts()
    c = inst.costs[0]
    n, m = inst.n, inst.m
    if not c.certified_binary:
        try:
            binary = validate_binary_marginals(c)
        except TooLargeForExhaustiveCheck:
            binary = False
        if not binary:
            warnings.warn("identical cost has no binary-marginals certificate; "
                          "running time is only pseudo-polynomial", NoBinaryMarginalsCertificate)

    bundles = [0] * n
    if n == 1 or m == 0:
        if m:
            bundles[0] = full_mask(m)
        return AddAndFixRun(Allocation(tuple(bundles), m), 0)

    guard = m * (c.eval(full_mask(m)) + 1) * (m + 1)
    U = full_mask(m)
    vals = [0] * n
    run = AddAndFixRun(None, 0)
    while U:
        if run.iterations >= guard:
            raise InternalInvariantViolation(
                f"add-and-fix exceeded {guard} iterations; cost function not monotone?")
        run.iterations += 1
        if record or on_iteration is not None:
            snap = Allocation(tuple(bundles), m)
            if record:
                run.history.append(snap)
            if on_iteration is not None:
                on_iteration(snap)
        t = _lowest(U)
        ell = min(range(n), key=lambda k: (vals[k], k))
        s = min((k for k in range(n) if k != ell), key=lambda k: (vals[k], k))
        bundles[ell] |= 1 << t
        U &= ~(1 << t)
        target = vals[s]
        changed = True
        while changed:
            changed = False
            for q in mask_to_list(bundles[ell]):
                if c.eval(bundles[ell] & ~(1 << q)) > target:
                    bundles[ell] &= ~(1 << q)
                    U |= 1 << q
                    run.removals += 1
                    changed = True
                    break
        vals[ell] = c.eval(bundles[ell])

    run.allocation = Allocation(tuple(bundles), m)
    if record:
        run.history.append(run.allocation)
    if __debug__ and not is_efx(inst, run.allocation):
        raise InternalInvariantViolation("add-and-fix output is not EFX")
    log.debug("add-and-fix: %d iterations, %d removals", run.iterations, run.removals)
    return run
