"""Matroid view of binary supermodular costs and the matroid partition algorithm.

For a binary supermodular cost ``c`` the function ``r(S) = |S| - c(S)`` is a
matroid rank function; independent sets are exactly the zero-cost bundles.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .costs import ChoreSet, CostOracle, as_mask, full_mask, popcount


@dataclass(frozen=True)
class MatroidView:
    oracle: CostOracle

    @property
    def m(self) -> int:
        return self.oracle.m

    def rank(self, chores: ChoreSet) -> int:
        S = as_mask(chores, self.m)
        return popcount(S) - self.oracle.eval(S)

    def is_independent(self, chores: ChoreSet) -> bool:
        return self.oracle.eval(as_mask(chores, self.m)) == 0


def rank(view: MatroidView, chores: ChoreSet) -> int:
    return view.rank(chores)


def is_independent(view: MatroidView, chores: ChoreSet) -> bool:
    return view.is_independent(chores)


@dataclass(frozen=True)
class UnionPartition:
    """Bundles (as masks), each independent in its own matroid, plus leftovers."""

    bundles: tuple
    unassigned: int

    @property
    def basis(self) -> int:
        out = 0
        for b in self.bundles:
            out |= b
        return out

    @property
    def size(self) -> int:
        return popcount(self.basis)


def matroid_partition(views: Sequence[MatroidView], ground: ChoreSet | None = None) -> UnionPartition:
    """Maximum-size set partitionable into independent sets of ``views``.

    Elements of ``ground`` are inserted in ascending order.  Each insertion
    runs a breadth-first search in the exchange graph for a shortest
    augmenting path; an element that cannot be inserted is left unassigned
    for good, since the union is itself a matroid and the greedy basis only
    grows.
    """
    if not views:
        raise ValueError("need at least one matroid")
    m = views[0].m
    if any(v.m != m for v in views):
        raise ValueError("all views must share the same chore count")
    ground_mask = full_mask(m) if ground is None else as_mask(ground, m)

    n = len(views)
    bundles = [0] * n
    owner: dict[int, int] = {}
    unassigned = 0

    for z in range(m):
        if not ground_mask >> z & 1:
            continue
        path = _augmenting_path(views, bundles, owner, z)
        if path is None:
            unassigned |= 1 << z
            continue
        # path: [(elem, agent receiving it), ...]; each element after the
        # first is displaced from the agent receiving its predecessor
        for elem, agent in path:
            prev = owner.get(elem)
            if prev is not None:
                bundles[prev] &= ~(1 << elem)
        for elem, agent in path:
            bundles[agent] |= 1 << elem
            owner[elem] = agent

    return UnionPartition(tuple(bundles), unassigned)


def _augmenting_path(views, bundles, owner, z):
    n = len(views)
    memo: dict[tuple[int, int], bool] = {}

    def indep(i: int, S: int) -> bool:
        key = (i, S)
        if key not in memo:
            memo[key] = views[i].is_independent(S)
        return memo[key]

    # parent[v] = (u, i): u moves into bundle i and displaces v
    parent: dict[int, tuple[int, int] | None] = {z: None}
    queue = deque([z])
    while queue:
        u = queue.popleft()
        bit = 1 << u
        for i in range(n):
            if owner.get(u) == i:
                continue
            Bi = bundles[i]
            if indep(i, Bi | bit):
                return _unwind(parent, u, i)
            rest = Bi
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                if v in parent:
                    continue
                if indep(i, (Bi | bit) & ~low):
                    parent[v] = (u, i)
                    queue.append(v)
    return None


def _unwind(parent, last, agent):
    path = [(last, agent)]
    node = last
    while parent[node] is not None:
        u, i = parent[node]
        path.append((u, i))
        node = u
    path.reverse()
    return path


def union_rank(views: Sequence[MatroidView], ground: ChoreSet | None = None) -> int:
    return matroid_partition(views, ground).size


def kfold_union_rank(view: MatroidView, k: int, ground: ChoreSet | None = None) -> int:
    if k < 1:
        raise ValueError("k must be positive")
    return union_rank([view] * k, ground)
