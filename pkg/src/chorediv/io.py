"""JSON instance/allocation documents, built-in instances, and random generators.

Instance document::

    {"version": 1, "n": 2, "m": 3,
     "agents": [{"kind": "threshold", "k": 1},
                {"kind": "partition_complement",
                 "blocks": [{"chores": [0, 1], "cap": 1}, {"chores": [2], "cap": 0}]}]}

Other kinds: ``cardinality``, ``coverage_max`` (field ``sets``) and ``table``
(field ``values``, in binary-counter subset order).
"""
from __future__ import annotations

import json
import random
from typing import Any

from .costs import (MAX_CHORES, Block, Cardinality, CostOracle, CoverageMax, PartitionComplement,
                    Table, Threshold, mask_to_list)
from .errors import InvalidChore, InvalidSpec, SchemaError, ValidationError
from .instance import Allocation, Instance

VERSION = 1


def spec_to_dict(spec) -> dict:
    if isinstance(spec, Cardinality):
        return {"kind": "cardinality"}
    if isinstance(spec, Threshold):
        return {"kind": "threshold", "k": spec.k}
    if isinstance(spec, PartitionComplement):
        return {"kind": "partition_complement",
                "blocks": [{"chores": sorted(b.chores), "cap": b.cap} for b in spec.blocks]}
    if isinstance(spec, CoverageMax):
        return {"kind": "coverage_max", "sets": [sorted(s) for s in spec.sets]}
    if isinstance(spec, Table):
        return {"kind": "table", "values": list(spec.values)}
    raise TypeError(f"unknown spec {spec!r}")


def _field(rec: dict, name: str, where: str, typ=None):
    if name not in rec:
        raise SchemaError(f"{where}: missing field {name!r}")
    val = rec[name]
    if typ is not None and (not isinstance(val, typ) or isinstance(val, bool)):
        raise SchemaError(f"{where}.{name}: expected {typ.__name__}, got {type(val).__name__}")
    return val


def _int_list(val, where: str) -> list[int]:
    if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                            for x in val):
        raise SchemaError(f"{where}: expected a list of integers")
    return val


def spec_from_dict(rec: Any, where: str = "agent"):
    if not isinstance(rec, dict):
        raise SchemaError(f"{where}: expected an object")
    kind = _field(rec, "kind", where, str)
    if kind == "cardinality":
        return Cardinality()
    if kind == "threshold":
        return Threshold(_field(rec, "k", where, int))
    if kind == "partition_complement":
        blocks = _field(rec, "blocks", where, list)
        out = []
        for b, blk in enumerate(blocks):
            w = f"{where}.blocks[{b}]"
            if not isinstance(blk, dict):
                raise SchemaError(f"{w}: expected an object")
            out.append(Block(frozenset(_int_list(_field(blk, "chores", w), w + ".chores")),
                             _field(blk, "cap", w, int)))
        return PartitionComplement(tuple(out))
    if kind == "coverage_max":
        sets = _field(rec, "sets", where, list)
        return CoverageMax(tuple(frozenset(_int_list(s, f"{where}.sets[{k}]"))
                                 for k, s in enumerate(sets)))
    if kind == "table":
        return Table(tuple(_int_list(_field(rec, "values", where), where + ".values")))
    raise SchemaError(f"{where}.kind: unknown cost kind {kind!r}")


def instance_to_dict(inst: Instance) -> dict:
    return {"version": VERSION, "n": inst.n, "m": inst.m,
            "agents": [spec_to_dict(c.spec) for c in inst.costs]}


def serialize_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def instance_from_dict(doc: Any, *, certify: bool = True) -> Instance:
    if not isinstance(doc, dict):
        raise SchemaError("instance document must be a JSON object")
    version = _field(doc, "version", "instance", int)
    if version != VERSION:
        raise SchemaError(f"instance.version: unsupported version {version}")
    n = _field(doc, "n", "instance", int)
    m = _field(doc, "m", "instance", int)
    agents = _field(doc, "agents", "instance", list)
    if n < 1:
        raise SchemaError("instance.n: need at least one agent")
    if not 0 <= m <= MAX_CHORES:
        raise SchemaError(f"instance.m: must be in 0..{MAX_CHORES}")
    if len(agents) != n:
        raise SchemaError(f"instance.agents: expected {n} entries, got {len(agents)}")
    oracles = []
    for i, rec in enumerate(agents):
        where = f"instance.agents[{i}]"
        spec = spec_from_dict(rec, where)
        try:
            oracle = CostOracle(spec, m, certify=certify)
        except (InvalidSpec, InvalidChore) as exc:
            raise SchemaError(f"{where}: {exc}") from exc
        if certify and isinstance(spec, Table) and m <= 16 and not oracle.certified_supermodular:
            what = "binary marginals" if not oracle.certified_binary else "supermodularity"
            raise ValidationError(f"{where}: table cost fails the {what} check")
        oracles.append(oracle)
    return Instance(tuple(oracles))


def parse_instance(text: str, *, certify: bool = True) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}: {exc.msg}") from exc
    return instance_from_dict(doc, certify=certify)


def allocation_to_dict(inst: Instance, alloc: Allocation) -> dict:
    profile = alloc.cost_profile(inst)
    return {"bundles": alloc.bundle_lists(), "cost_profile": profile,
            "social_cost": sum(profile)}


def serialize_allocation(inst: Instance, alloc: Allocation) -> str:
    return json.dumps(allocation_to_dict(inst, alloc)) + "\n"


def parse_allocation(text: str, m: int) -> Allocation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("allocation document must be a JSON object")
    bundles = _field(doc, "bundles", "allocation", list)
    lists = [_int_list(b, f"allocation.bundles[{i}]") for i, b in enumerate(bundles)]
    try:
        return Allocation.from_sets(lists, m)
    except InvalidChore as exc:
        raise SchemaError(f"allocation.bundles: {exc}") from exc


# -- built-in instances --------------------------------------------------------

def _pairs_with_tail(k: int) -> PartitionComplement:
    blocks = [((2 * p, 2 * p + 1), 1) for p in range(k)] + [((2 * k,), 0)]
    return PartitionComplement.of(*blocks)


BUILTINS = ("incomparable-1", "incomparable-2", "no-po-efx", "exact3cover-demo")


def builtin_instance(name: str, **params) -> Instance:
    """The instances used in the incomparability and PO+EFX arguments.

    ``no-po-efx`` takes ``k`` (default 1); ``exact3cover-demo`` takes
    ``sets`` (default two disjoint triples over six chores) and ``n``.
    """
    if name == "incomparable-1":
        return Instance.from_specs([Cardinality(), Threshold(3), Threshold(3)], 11)
    if name == "incomparable-2":
        agent3 = PartitionComplement.of(((0,), 0), ((1,), 0), ((2,), 0), ((3,), 0),
                                        ((4, 5), 1), ((6, 7), 1), ((8, 9), 1))
        return Instance.from_specs([Cardinality(), Cardinality(), agent3], 10)
    if name == "no-po-efx":
        k = int(params.get("k", 1))
        if k < 1:
            raise ValueError("k must be positive")
        return Instance.from_specs([_pairs_with_tail(k)] * 2, 2 * k + 1)
    if name == "exact3cover-demo":
        sets = params.get("sets", ((0, 1, 2), (3, 4, 5)))
        m = int(params.get("m", 1 + max((max(s) for s in sets), default=-1)))
        n = int(params.get("n", max(1, m // 3)))
        return Instance.from_specs([CoverageMax.of(*sets)] * n, m)
    raise ValueError(f"unknown builtin instance {name!r}; choose from {', '.join(BUILTINS)}")


def builtin_allocation(name: str, **params) -> Allocation:
    """Named allocations from the same arguments (0-based chores)."""
    if name == "incomparable-2-A":
        return Allocation.from_sets([[3, 4, 5], [6, 7, 8, 9], [0, 1, 2]], 10)
    if name == "incomparable-2-B":
        return Allocation.from_sets([[0, 1, 4], [5, 7, 9], [2, 3, 6, 8]], 10)
    if name == "no-po-efx-po":
        # pairs split, final chore to agent 0
        k = int(params.get("k", 1))
        a = [2 * p for p in range(k)] + [2 * k]
        b = [2 * p + 1 for p in range(k)]
        return Allocation.from_sets([a, b], 2 * k + 1)
    raise ValueError(f"unknown builtin allocation {name!r}")


# -- random instances ----------------------------------------------------------

def random_partition_complement(m: int, rng: random.Random) -> PartitionComplement:
    chores = list(range(m))
    rng.shuffle(chores)
    blocks = []
    while chores:
        size = rng.randint(1, min(5, len(chores)))
        block, chores = chores[:size], chores[size:]
        blocks.append((tuple(sorted(block)), rng.randint(0, size // 2)))
    return PartitionComplement.of(*blocks)


def _graphic_rank_table(m: int, edges: list[tuple[int, int]], trunc: int | None) -> list[int]:
    """Graphic-matroid rank of every edge subset, optionally truncated."""
    vals = []
    for S in range(1 << m):
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x
        r = 0
        for j in mask_to_list(S):
            a, b = find(edges[j][0]), find(edges[j][1])
            if a != b:
                parent[a] = b
                r += 1
        vals.append(r if trunc is None else min(r, trunc))
    return vals


def random_graphic_table(m: int, rng: random.Random) -> Table:
    """|S| minus a (possibly truncated) graphic-matroid rank, as a table."""
    nodes = rng.randint(2, max(2, m // 2 + 1))
    edges = [(rng.randrange(nodes), rng.randrange(nodes)) for _ in range(m)]
    trunc = rng.choice([None, None, rng.randint(0, max(0, m))])
    ranks = _graphic_rank_table(m, edges, trunc)
    return Table(tuple(bin(S).count("1") - r for S, r in enumerate(ranks)))


def random_supermodular_spec(m: int, rng: random.Random):
    roll = rng.random()
    if roll < 0.1:
        return Cardinality()
    if roll < 0.25:
        return Threshold(rng.randint(0, m // 2))
    if roll < 0.7 or m > 10:
        return random_partition_complement(m, rng)
    return random_graphic_table(m, rng)


def random_coverage(m: int, rng: random.Random) -> CoverageMax:
    sets = []
    for _ in range(rng.randint(0, 4)):
        sets.append(frozenset(rng.sample(range(m), rng.randint(1, m))) if m else frozenset())
    return CoverageMax(tuple(sets))


def random_instance(n: int, m: int, seed: int = 0, family: str = "supermodular") -> Instance:
    """Random instance.  Families: ``supermodular`` (per-agent mix of
    structural and graphic costs), ``identical`` (one supermodular cost
    shared by all), ``identical-binary`` (identical, supermodular or coverage).
    """
    rng = random.Random(seed)
    if family == "supermodular":
        return Instance.from_specs([random_supermodular_spec(m, rng) for _ in range(n)], m)
    if family == "identical":
        return Instance.from_specs([random_supermodular_spec(m, rng)] * n, m)
    if family == "identical-binary":
        spec = random_coverage(m, rng) if rng.random() < 0.5 else random_supermodular_spec(m, rng)
        return Instance.from_specs([spec] * n, m)
    raise ValueError(f"unknown random family {family!r}")


def instance_equal_on_all_sets(a: Instance, b: Instance) -> bool:
    if (a.n, a.m) != (b.n, b.m):
        return False
    full = range(1 << a.m)
    return all(x.eval(S) == y.eval(S) for x, y in zip(a.costs, b.costs) for S in full)


def parse_kv(text: str) -> dict:
    """``"n=3,m=8"`` -> {"n": "3", "m": "8"}."""
    out = {}
    for part in filter(None, text.split(",")):
        key, sep, val = part.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {part!r}")
        out[key.strip()] = val.strip()
    return out
