"""Cost-function oracles over chore sets.

Chore sets are passed around as int bitmasks (bit ``j`` set means chore ``j``
is in the set).  Every public entry point also accepts any iterable of chore
indices and converts it with :func:`as_mask`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import ChoreAlreadyPresent, InvalidChore, InvalidSpec, TooLargeForExhaustiveCheck

MAX_CHORES = 64
DEFAULT_VALIDATOR_BOUND = 16
# value tables are materialised in memory, keep them small
MAX_TABLE_CHORES = 24

ChoreSet = Union[int, Iterable[int]]


def as_mask(chores: ChoreSet, m: int) -> int:
    if isinstance(chores, (int, np.integer)) and not isinstance(chores, bool):
        mask = int(chores)
        if mask < 0 or mask >> m:
            raise InvalidChore(f"mask {mask:#x} has bits outside 0..{m - 1}")
        return mask
    mask = 0
    for c in chores:
        c = int(c)
        if not 0 <= c < m:
            raise InvalidChore(f"chore {c} outside 0..{m - 1}")
        mask |= 1 << c
    return mask


def mask_to_list(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(m: int) -> int:
    return (1 << m) - 1


# -- specifications ---------------------------------------------------------

@dataclass(frozen=True)
class Cardinality:
    """c(S) = |S|."""


@dataclass(frozen=True)
class Threshold:
    """c(S) = max(0, |S| - k)."""

    k: int


@dataclass(frozen=True)
class Block:
    chores: frozenset
    cap: int


@dataclass(frozen=True)
class PartitionComplement:
    """c(S) = |S| - sum_j min(|S & B_j|, cap_j) over a partition of the chores.

    The subtracted term is a partition-matroid rank, so the cost is binary
    supermodular.  A pair block with cap 1 models two complementary chores.
    """

    blocks: tuple

    @classmethod
    def of(cls, *blocks) -> "PartitionComplement":
        return cls(tuple(Block(frozenset(ch), cap) for ch, cap in blocks))


@dataclass(frozen=True)
class CoverageMax:
    """c(S) = max_F |S & F|; binary marginals, not necessarily supermodular."""

    sets: tuple

    @classmethod
    def of(cls, *sets) -> "CoverageMax":
        return cls(tuple(frozenset(s) for s in sets))


@dataclass(frozen=True)
class Table:
    """Explicit values in binary-counter subset order (bit j = chore j)."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))


CostSpec = Union[Cardinality, Threshold, PartitionComplement, CoverageMax, Table]

STRUCTURAL = (Cardinality, Threshold, PartitionComplement)


def _check_spec(spec, m: int) -> None:
    if isinstance(spec, Cardinality):
        return
    if isinstance(spec, Threshold):
        if spec.k < 0:
            raise InvalidSpec("threshold k must be nonnegative")
        return
    if isinstance(spec, PartitionComplement):
        seen = 0
        for b in spec.blocks:
            bm = as_mask(b.chores, m)
            if bm & seen:
                raise InvalidSpec("partition blocks overlap")
            if not 0 <= b.cap <= len(b.chores):
                raise InvalidSpec(f"cap {b.cap} outside 0..{len(b.chores)}")
            seen |= bm
        if seen != full_mask(m):
            raise InvalidSpec("partition blocks do not cover every chore")
        return
    if isinstance(spec, CoverageMax):
        for s in spec.sets:
            as_mask(s, m)
        return
    if isinstance(spec, Table):
        if m > MAX_TABLE_CHORES:
            raise InvalidSpec(f"table costs support at most {MAX_TABLE_CHORES} chores")
        if len(spec.values) != 1 << m:
            raise InvalidSpec(f"table needs {1 << m} values, got {len(spec.values)}")
        if spec.values[0] != 0:
            raise InvalidSpec("table value of the empty set must be 0")
        if any(v < 0 for v in spec.values):
            raise InvalidSpec("table values must be nonnegative")
        return
    raise InvalidSpec(f"unknown cost spec {spec!r}")


def _bitcount(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks).astype(np.int64)


class CostOracle:
    """Value oracle for one agent's cost function.

    ``certified_binary`` and ``certified_supermodular`` record what is known
    about the function: structural families are certified by construction,
    coverage and table costs only after exhaustive validation (requested with
    ``certify=True`` and possible when ``m <= bound``).
    """

    __slots__ = ("spec", "m", "_blocks", "_sets", "_table", "certified_binary",
                 "certified_supermodular")

    def __init__(self, spec: CostSpec, m: int, *, certify: bool = True,
                 bound: int = DEFAULT_VALIDATOR_BOUND):
        if not 0 <= m <= MAX_CHORES:
            raise InvalidSpec(f"chore count must be in 0..{MAX_CHORES}")
        _check_spec(spec, m)
        self.spec = spec
        self.m = m
        self._table = None
        self._blocks = ()
        self._sets = ()
        if isinstance(spec, PartitionComplement):
            self._blocks = tuple((as_mask(b.chores, m), b.cap) for b in spec.blocks)
        elif isinstance(spec, CoverageMax):
            self._sets = tuple(as_mask(s, m) for s in spec.sets)
        elif isinstance(spec, Table):
            self._table = np.asarray(spec.values, dtype=np.int64)

        if isinstance(spec, STRUCTURAL):
            self.certified_binary = self.certified_supermodular = True
        else:
            self.certified_binary = isinstance(spec, CoverageMax)
            self.certified_supermodular = False
            if certify and m <= bound:
                self.certified_binary = validate_binary_marginals(self, bound=bound)
                self.certified_supermodular = (
                    self.certified_binary and validate_supermodular(self, bound=bound))

    def __repr__(self):
        return f"CostOracle({self.spec!r}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, CostOracle) and (self.spec, self.m) == (other.spec, other.m)

    def __hash__(self):
        return hash((self.spec, self.m))

    def eval(self, chores: ChoreSet) -> int:
        S = as_mask(chores, self.m)
        spec = self.spec
        if isinstance(spec, Cardinality):
            return popcount(S)
        if isinstance(spec, Threshold):
            return max(0, popcount(S) - spec.k)
        if isinstance(spec, PartitionComplement):
            return popcount(S) - sum(min(popcount(S & b), cap) for b, cap in self._blocks)
        if isinstance(spec, CoverageMax):
            return max((popcount(S & f) for f in self._sets), default=0)
        return int(self._table[S])

    def eval_masks(self, masks: np.ndarray) -> np.ndarray:
        """Vectorised eval over an array of bitmasks."""
        masks = np.asarray(masks, dtype=np.uint64)
        spec = self.spec
        if isinstance(spec, Cardinality):
            return _bitcount(masks)
        if isinstance(spec, Threshold):
            return np.maximum(_bitcount(masks) - spec.k, 0)
        if isinstance(spec, PartitionComplement):
            out = _bitcount(masks)
            for b, cap in self._blocks:
                out -= np.minimum(_bitcount(masks & np.uint64(b)), cap)
            return out
        if isinstance(spec, CoverageMax):
            out = np.zeros(masks.shape, dtype=np.int64)
            for f in self._sets:
                np.maximum(out, _bitcount(masks & np.uint64(f)), out=out)
            return out
        return self._table[masks.astype(np.int64)]

    def table(self) -> np.ndarray:
        """All 2^m values, indexed by mask."""
        if self._table is None:
            if self.m > MAX_TABLE_CHORES:
                raise TooLargeForExhaustiveCheck(f"m={self.m} too large to tabulate")
            self._table = self.eval_masks(np.arange(1 << self.m, dtype=np.uint64))
        return self._table


def marginal(oracle: CostOracle, chores: ChoreSet, a: int) -> int:
    S = as_mask(chores, oracle.m)
    if not 0 <= a < oracle.m:
        raise InvalidChore(f"chore {a} outside 0..{oracle.m - 1}")
    if S >> a & 1:
        raise ChoreAlreadyPresent(f"chore {a} already in the set")
    return oracle.eval(S | 1 << a) - oracle.eval(S)


def _exhaustive_table(oracle: CostOracle, bound: int) -> np.ndarray:
    if oracle.m > bound:
        raise TooLargeForExhaustiveCheck(f"m={oracle.m} exceeds validator bound {bound}")
    return oracle.table()


def validate_binary_marginals(oracle: CostOracle, *, bound: int = DEFAULT_VALIDATOR_BOUND) -> bool:
    t = _exhaustive_table(oracle, bound)
    if t[0] != 0:
        return False
    masks = np.arange(1 << oracle.m, dtype=np.int64)
    for a in range(oracle.m):
        S = masks[(masks >> a & 1) == 0]
        d = t[S | 1 << a] - t[S]
        if ((d != 0) & (d != 1)).any():
            return False
    return True


def validate_supermodular(oracle: CostOracle, *, bound: int = DEFAULT_VALIDATOR_BOUND) -> bool:
    """Local exchange form: c(S+a+b) - c(S+b) >= c(S+a) - c(S) for a != b not in S."""
    t = _exhaustive_table(oracle, bound)
    masks = np.arange(1 << oracle.m, dtype=np.int64)
    for a in range(oracle.m):
        for b in range(a + 1, oracle.m):
            S = masks[((masks >> a | masks >> b) & 1) == 0]
            A, B = 1 << a, 1 << b
            if (t[S | A | B] - t[S | B] < t[S | A] - t[S]).any():
                return False
    return True


def validate_monotone(oracle: CostOracle, *, bound: int = DEFAULT_VALIDATOR_BOUND) -> bool:
    t = _exhaustive_table(oracle, bound)
    masks = np.arange(1 << oracle.m, dtype=np.int64)
    for a in range(oracle.m):
        S = masks[(masks >> a & 1) == 0]
        if (t[S | 1 << a] < t[S]).any():
            return False
    return True
