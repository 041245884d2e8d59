"""Show that EF1+PO, MMS+PO and Lorenz domination pull in different directions
on the two built-in incomparability instances."""
from chorediv.algorithms import (ef1_and_efficient, lorenz_dominating, minimax_shares,
                                 mms_and_efficient)
from chorediv.fairness import is_ef1, is_mms_fair
from chorediv.io import builtin_allocation, builtin_instance
from chorediv.oracles import brute_min_social_cost


def describe(inst, name, alloc, shares):
    print(f"  {name:<8} bundles {alloc.bundle_lists()}  costs {alloc.cost_profile(inst)}"
          f"  EF1 {bool(is_ef1(inst, alloc))}  MMS {bool(is_mms_fair(inst, alloc, shares))}")


def main():
    inst = builtin_instance("incomparable-1")
    shares = minimax_shares(inst)
    print(f"incomparable-1: n={inst.n} m={inst.m} shares {shares} "
          f"c* {brute_min_social_cost(inst)[0]}")
    for name, algo in [("ef1po", ef1_and_efficient), ("mmspo", mms_and_efficient),
                       ("lorenz", lorenz_dominating)]:
        describe(inst, name, algo(inst), shares)

    inst = builtin_instance("incomparable-2")
    shares = minimax_shares(inst)
    print(f"incomparable-2: n={inst.n} m={inst.m} shares {shares}")
    for tag in "AB":
        describe(inst, tag, builtin_allocation(f"incomparable-2-{tag}"), shares)


if __name__ == "__main__":
    main()
