"""Reduce random yes-instances of 3-Partition, build witnesses, extract triples.

    python3 scripts/reduction_round_trip.py --max-m 3 --max-b 13 --seed 0
"""

import argparse
import itertools
import random
import time

from dagreal.reduction import (
    ThreePartitionInstance,
    counting_identities,
    extract_partition,
    reduce,
    verify,
    witness_from_partition,
)


def planted(m, B, rng):
    ok = [t for t in itertools.product(range(1, B), repeat=3)
          if sum(t) == B and all(B < 4 * v < 2 * B for v in t)]
    if not ok:
        return None
    values = [v for _ in range(m) for v in rng.choice(ok)]
    perm = list(range(3 * m))
    rng.shuffle(perm)
    a = [0] * (3 * m)
    for src, dst in enumerate(perm):
        a[dst] = values[src]
    triples = [tuple(sorted(perm[3 * g + k] + 1 for k in range(3))) for g in range(m)]
    return ThreePartitionInstance(tuple(a), m, B), triples


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-b", type=int, default=13)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'m':>2} {'B':>3} {'n':>5} {'arcs':>6} {'xi':>6} {'ms':>7} extracted")
    for m in range(1, args.max_m + 1):
        for B in range(1, args.max_b + 1):
            made = planted(m, B, rng)
            if made is None:
                continue
            tp, triples = made
            t0 = time.perf_counter()
            ri = reduce(tp)
            real = witness_from_partition(tp, triples)
            assert verify(ri.sequence, real)
            got = extract_partition(ri, real)
            ms = (time.perf_counter() - t0) * 1e3
            assert all(sum(tp.a[i - 1] for i in t) == B for t in got)
            _, xi = counting_identities(m, B)
            print(f"{m:>2} {B:>3} {ri.sequence.n:>5} {len(real.arcs):>6} {xi:>6} {ms:>7.1f} {got}")


if __name__ == "__main__":
    main()
