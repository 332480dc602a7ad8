"""Run the repeated super-type family through every solver and report timings.

    python3 scripts/fig3_family.py --kmax 10
"""

import argparse
import time

from dagreal.core import Budget, DegreePair as P, normalize
from dagreal.exact import solve_exact
from dagreal.fpt import FptConfig, solve_high_potential, solve_low_potential
from dagreal.potential import check_ordering, omega


def family(k):
    return [P(0, 2), P(0, 4)] + [P(2, 1), P(3, 4)] * k + [P(2, 0), P(2, 0), P(1, 0), P(1, 0)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=10)
    ap.add_argument("--nonrep-cap", type=int, default=8)
    ap.add_argument("--supertype-cap", type=int, default=4)
    args = ap.parse_args()
    cfg = FptConfig(16, 8, args.nonrep_cap, args.supertype_cap)
    print(f"{'k':>3} {'n':>4} {'max_w':>5} {'exact_ms':>9} {'high':>18} {'low_ms':>7} f")
    for k in range(1, args.kmax + 1):
        pairs = family(k)
        s = normalize(pairs)
        peak = max(map(omega, check_ordering(pairs).trace))
        t0 = time.perf_counter()
        exact = solve_exact(s)
        t1 = time.perf_counter()
        high = solve_high_potential(s, cfg, Budget())
        t2 = time.perf_counter()
        low = solve_low_potential(s, cfg, Budget())
        t3 = time.perf_counter()
        f = low.stats.get("filling", {}).get("f")
        print(f"{k:>3} {s.n:>4} {peak:>5} {(t1 - t0) * 1e3:>9.2f} {high.verdict.value:>18} "
              f"{(t3 - t2) * 1e3:>7.2f} {f}")
        assert exact.realizable and low.realizable


if __name__ == "__main__":
    main()
