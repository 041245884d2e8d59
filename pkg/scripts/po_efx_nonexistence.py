"""Enumerate every allocation of the no-PO-EFX family and tabulate which are
Pareto efficient and which satisfy beta-EFkX."""
import argparse
from fractions import Fraction

from chorediv.fairness import is_beta_efkx
from chorediv.io import builtin_instance
from chorediv.oracles import brute_is_pareto_efficient, enumerate_allocations


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=3)
    ap.add_argument("--betas", default="1/100,1/2,1")
    args = ap.parse_args()
    betas = [Fraction(b) for b in args.betas.split(",")]
    for k in range(1, args.kmax + 1):
        inst = builtin_instance("no-po-efx", k=k)
        total = po = 0
        efkx = {b: 0 for b in betas}
        both = {b: 0 for b in betas}
        profiles = set()
        for alloc in enumerate_allocations(inst.n, inst.m):
            total += 1
            is_po = brute_is_pareto_efficient(inst, alloc)
            if is_po:
                po += 1
                profiles.add(tuple(alloc.cost_profile(inst)))
            for b in betas:
                fair = bool(is_beta_efkx(inst, alloc, b, k))
                efkx[b] += fair
                both[b] += fair and is_po
        print(f"k={k} m={inst.m}: {total} allocations, {po} PO with profiles {sorted(profiles)}")
        for b in betas:
            print(f"    beta={str(b):<6} EFkX {efkx[b]:>5}   PO and EFkX {both[b]}")


if __name__ == "__main__":
    main()
