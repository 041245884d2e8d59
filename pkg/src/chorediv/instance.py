"""Instances and allocations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .costs import ChoreSet, CostOracle, as_mask, full_mask, mask_to_list
from .errors import InvalidAllocation, InvalidSpec


@dataclass(frozen=True)
class Instance:
    costs: tuple

    def __post_init__(self):
        object.__setattr__(self, "costs", tuple(self.costs))
        if not self.costs:
            raise InvalidSpec("an instance needs at least one agent")
        if len({c.m for c in self.costs}) != 1:
            raise InvalidSpec("all cost oracles must share the chore count")

    @classmethod
    def from_specs(cls, specs: Iterable, m: int, **oracle_kw) -> "Instance":
        return cls(tuple(CostOracle(s, m, **oracle_kw) for s in specs))

    @property
    def n(self) -> int:
        return len(self.costs)

    @property
    def m(self) -> int:
        return self.costs[0].m

    @property
    def certified(self) -> bool:
        """Every oracle is certified binary supermodular."""
        return all(c.certified_supermodular for c in self.costs)

    @property
    def identical(self) -> bool:
        return all(c == self.costs[0] for c in self.costs[1:])

    def cost(self, agent: int, chores: ChoreSet) -> int:
        return self.costs[agent].eval(chores)


@dataclass(frozen=True)
class Allocation:
    """Bundles stored as chore bitmasks, one per agent."""

    bundles: tuple
    m: int

    def __post_init__(self):
        object.__setattr__(self, "bundles", tuple(int(b) for b in self.bundles))
        seen = 0
        for b in self.bundles:
            if b < 0 or b >> self.m:
                raise InvalidAllocation(f"bundle {b:#x} has chores outside 0..{self.m - 1}")
            if b & seen:
                raise InvalidAllocation("bundles overlap")
            seen |= b

    @classmethod
    def from_sets(cls, bundles: Sequence[ChoreSet], m: int) -> "Allocation":
        masks = []
        for b in bundles:
            if not isinstance(b, int):
                b = list(b)
                if len(set(b)) != len(b):
                    raise InvalidAllocation("a chore is listed twice in one bundle")
            masks.append(as_mask(b, m))
        return cls(tuple(masks), m)

    @classmethod
    def empty(cls, n: int, m: int) -> "Allocation":
        return cls((0,) * n, m)

    @property
    def n(self) -> int:
        return len(self.bundles)

    @property
    def assigned(self) -> int:
        out = 0
        for b in self.bundles:
            out |= b
        return out

    @property
    def unassigned(self) -> int:
        return full_mask(self.m) & ~self.assigned

    @property
    def complete(self) -> bool:
        return self.assigned == full_mask(self.m)

    def bundle_lists(self) -> list[list[int]]:
        return [mask_to_list(b) for b in self.bundles]

    def cost_profile(self, inst: Instance) -> list[int]:
        check_compatible(inst, self)
        return [inst.cost(i, b) for i, b in enumerate(self.bundles)]

    def sorted_profile(self, inst: Instance) -> list[int]:
        return sorted(self.cost_profile(inst), reverse=True)

    def social_cost(self, inst: Instance) -> int:
        return sum(self.cost_profile(inst))

    def extends(self, other: "Allocation") -> bool:
        return all(a & b == b for a, b in zip(self.bundles, other.bundles))


def check_compatible(inst: Instance, alloc: Allocation) -> None:
    if alloc.n != inst.n or alloc.m != inst.m:
        raise InvalidAllocation(
            f"allocation shape (n={alloc.n}, m={alloc.m}) does not match instance "
            f"(n={inst.n}, m={inst.m})")
