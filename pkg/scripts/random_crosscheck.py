"""Cross-check every solver against brute force on random instances.

Prints one row per instance that fails and a summary line; exit status 1 if
anything failed.
"""
import argparse
import random
import sys
import time

from chorediv.cli import verify_report
from chorediv.io import random_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--mmax", type=int, default=10)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    start, checked, failed = time.perf_counter(), 0, 0
    while checked < args.count:
        n, m = rng.randint(2, args.nmax), rng.randint(1, args.mmax)
        if n ** m > 1 << 20:
            continue
        seed = rng.getrandbits(32)
        inst = random_instance(n, m, seed)
        if not inst.certified:
            continue
        checked += 1
        bad = [name for name, ok, _ in verify_report(inst) if not ok]
        if bad:
            failed += 1
            print(f"FAIL n={n} m={m} seed={seed}: {', '.join(bad)}")
    print(f"{checked} instances, {failed} failures, {time.perf_counter() - start:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
