"""Command-line front end.

Instances can be given as a JSON path, ``builtin:NAME[:key=val,...]`` or
``random:n=3,m=8[,family=...]`` (the latter seeded by ``--seed``).
Allocations can be a JSON path or ``builtin:NAME[:key=val,...]``.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or
validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algorithms, fairness, oracles
from .errors import ChoreDivisionError
from .fairness import Lorenz, lorenz_compare
from .instance import Instance
from .io import (allocation_to_dict, builtin_allocation, builtin_instance, parse_allocation,
                 parse_instance, parse_kv, random_instance, serialize_instance)

ALGOS = {
    "scm": algorithms.social_cost_min,
    "ef1po": algorithms.ef1_and_efficient,
    "mmspo": algorithms.mms_and_efficient,
    "lorenz": algorithms.lorenz_dominating,
    "efx-identical": algorithms.add_and_fix,
}

PROPERTIES = ("ef1", "efx", "befkx", "mms", "po", "lorenz-vs:PATH")


class UsageError(Exception):
    pass


def _builtin_args(ref: str) -> tuple[str, dict]:
    name, _, params = ref.partition(":")
    return name, parse_kv(params)


def load_instance(ref: str, seed: int = 0, certify: bool = True):
    if ref.startswith("builtin:"):
        name, params = _builtin_args(ref[len("builtin:"):])
        return builtin_instance(name, **params)
    if ref.startswith("random:"):
        kv = parse_kv(ref[len("random:"):])
        return random_instance(int(kv.get("n", 3)), int(kv.get("m", 8)), seed,
                               kv.get("family", "supermodular"))
    return parse_instance(Path(ref).read_text(encoding="utf-8"), certify=certify)


def load_allocation(ref: str, m: int):
    if ref.startswith("builtin:"):
        name, params = _builtin_args(ref[len("builtin:"):])
        return builtin_allocation(name, **params)
    return parse_allocation(Path(ref).read_text(encoding="utf-8"), m)


def cmd_solve(args) -> int:
    inst = load_instance(args.instance, args.seed)
    alloc = ALGOS[args.algo](inst)
    print(json.dumps(allocation_to_dict(inst, alloc)))
    return 0


def _parse_beta(text: str):
    num, sep, den = text.partition("/")
    try:
        return (int(num), int(den)) if sep else int(num)
    except ValueError:
        raise UsageError(f"--beta expects NUM/DEN, got {text!r}") from None


def cmd_check(args) -> int:
    inst = load_instance(args.instance, args.seed)
    alloc = load_allocation(args.allocation, inst.m)
    prop = args.property
    report: dict = {"property": prop}
    if prop == "ef1":
        wit = fairness.is_ef1(inst, alloc)
    elif prop == "efx":
        wit = fairness.is_efx(inst, alloc)
    elif prop == "befkx":
        beta = _parse_beta(args.beta)
        report.update(beta=args.beta, k=args.k)
        wit = fairness.is_beta_efkx(inst, alloc, beta, args.k)
    elif prop == "mms":
        shares = algorithms.minimax_shares(inst)
        report["shares"] = shares
        wit = fairness.is_mms_fair(inst, alloc, shares)
    elif prop == "po":
        wit = fairness.FairnessWitness(oracles.brute_is_pareto_efficient(inst, alloc, args.bound))
    elif prop.startswith("lorenz-vs:"):
        other = load_allocation(prop[len("lorenz-vs:"):], inst.m)
        rel = lorenz_compare(alloc.cost_profile(inst), other.cost_profile(inst))
        report["relation"] = rel.value
        wit = fairness.FairnessWitness(rel in (Lorenz.DOMINATES, Lorenz.EQUAL))
    else:
        raise UsageError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    report["verdict"] = wit.verdict
    if wit.violator is not None:
        report["violator"] = wit.violator.as_dict()
    print(json.dumps(report))
    return 0 if wit.verdict else 1


def cmd_shares(args) -> int:
    inst = load_instance(args.instance, args.seed)
    print(json.dumps(algorithms.minimax_shares(inst)))
    return 0


def verify_report(inst, bound: int = oracles.DEFAULT_BOUND) -> list[tuple[str, bool, str]]:
    """Run every solver against the brute-force oracles; (name, ok, detail) rows."""
    from .costs import validate_binary_marginals, validate_supermodular

    rows = []
    cert = all(validate_binary_marginals(c) and validate_supermodular(c) for c in inst.costs)
    rows.append(("costs binary supermodular", cert, ""))
    if not cert:
        rows.append(("remaining checks", False, "skipped: costs not binary supermodular"))
        return rows
    inst = Instance.from_specs([c.spec for c in inst.costs], inst.m)

    cstar, _ = oracles.brute_min_social_cost(inst, bound)
    c_union = algorithms.min_social_cost(inst)
    rows.append(("min social cost = m - union rank", c_union == cstar,
                 f"brute {cstar}, matroid {c_union}"))
    shares = algorithms.minimax_shares(inst)
    brute_shares = [oracles.brute_minimax_share(inst, i, bound) for i in range(inst.n)]
    rows.append(("minimax shares match enumeration", shares == brute_shares,
                 f"matroid {shares}, brute {brute_shares}"))
    rows.append(("sum of shares >= c*", sum(brute_shares) >= cstar,
                 f"{sum(brute_shares)} >= {cstar}"))

    scm = algorithms.social_cost_min(inst)
    rows.append(("scm output cost = c*", scm.social_cost(inst) == cstar,
                 str(scm.social_cost(inst))))
    ef1 = algorithms.ef1_and_efficient(inst)
    rows.append(("ef1po output EF1 and cost c*",
                 bool(fairness.is_ef1(inst, ef1)) and ef1.social_cost(inst) == cstar,
                 str(ef1.cost_profile(inst))))
    mms = algorithms.mms_and_efficient(inst)
    rows.append(("mmspo output MMS and cost c*",
                 bool(fairness.is_mms_fair(inst, mms, brute_shares))
                 and mms.social_cost(inst) == cstar, str(mms.cost_profile(inst))))
    lor = algorithms.lorenz_dominating(inst)
    low = oracles.brute_min_prefix_sums(inst, bound)
    mine = [sum(lor.sorted_profile(inst)[:k + 1]) for k in range(inst.n)]
    rows.append(("lorenz output dominates every allocation",
                 all(a <= int(b) for a, b in zip(mine, low)), str(lor.sorted_profile(inst))))
    return rows


def cmd_verify(args) -> int:
    inst = load_instance(args.instance, args.seed, certify=False)
    rows = verify_report(inst, args.bound)
    for name, ok, detail in rows:
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    return 0 if all(ok for _, ok, _ in rows) else 1


def cmd_gen(args) -> int:
    inst = load_instance(args.source, args.seed)
    Path(args.path).write_text(serialize_instance(inst), encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chorediv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0, help="seed for random: instances")
        sp.add_argument("--bound", type=int, default=oracles.DEFAULT_BOUND,
                        help="max allocations enumerated by brute-force checks")

    s = sub.add_parser("solve", help="compute an allocation")
    s.add_argument("instance")
    s.add_argument("--algo", choices=sorted(ALGOS), required=True)
    common(s)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("check", help="test a fairness or efficiency property")
    s.add_argument("instance")
    s.add_argument("allocation")
    s.add_argument("--property", required=True, help="one of " + ", ".join(PROPERTIES))
    s.add_argument("--beta", default="1", help="NUM/DEN for befkx")
    s.add_argument("--k", type=int, default=1, help="removal count for befkx")
    common(s)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("shares", help="print minimax shares")
    s.add_argument("instance")
    common(s)
    s.set_defaults(func=cmd_shares)

    s = sub.add_parser("verify", help="cross-check solvers against brute force")
    s.add_argument("instance")
    common(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="write a builtin or random instance to PATH")
    s.add_argument("source")
    s.add_argument("path")
    common(s)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ChoreDivisionError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
