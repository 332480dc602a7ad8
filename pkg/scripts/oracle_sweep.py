"""Compare the exact and FPT solvers against brute force on random instances.

    python3 scripts/oracle_sweep.py --count 2000 --max-n 7 --max-delta 3 --seed 1
"""

import argparse
import collections
import random
import time

from dagreal.core import DegreePair as P, DegreeSequence, Verdict
from dagreal.exact import brute_force_oracle, solve_exact
from dagreal.fpt import solve_fpt
from dagreal.io import random_instance


def as_sequence(pairs):
    kept = tuple(p for p in pairs if p != (0, 0))
    return DegreeSequence(kept, len(pairs) - len(kept))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--max-delta", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--fpt", action="store_true", help="also run the FPT solver with default caps")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    tally = collections.Counter()
    timing = collections.defaultdict(float)
    for _ in range(args.count):
        n, delta = rng.randint(1, args.max_n), rng.randint(1, args.max_delta)
        if rng.random() < 0.5:
            pairs = random_instance(n, delta, rng.randrange(2**32), shuffle_degrees=True)
        else:
            pairs = [P(rng.randint(0, delta), rng.randint(0, delta)) for _ in range(n)]
        s = as_sequence(pairs)
        t0 = time.perf_counter()
        want = brute_force_oracle(s)
        t1 = time.perf_counter()
        got = solve_exact(s).verdict
        t2 = time.perf_counter()
        timing["oracle"] += t1 - t0
        timing["exact"] += t2 - t1
        tally[want.value] += 1
        tally["exact_disagree"] += got is not want
        if args.fpt:
            t3 = time.perf_counter()
            fpt = solve_fpt(s).verdict
            timing["fpt"] += time.perf_counter() - t3
            if fpt is Verdict.UNKNOWN:
                tally["fpt_unknown"] += 1
            else:
                tally["fpt_disagree"] += fpt is not want
    for key in sorted(tally):
        print(f"{key:>16}: {tally[key]}")
    for key in sorted(timing):
        print(f"{key + '_s':>16}: {timing[key]:.2f}")


if __name__ == "__main__":
    main()
