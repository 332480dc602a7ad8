"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import random
import time

import pytest

from dagreal.cli import main
from dagreal.core import Budget, DegreePair as P, ResourceLimit, Verdict, normalize
from dagreal.exact import brute_force_oracle, solve_exact
from dagreal.fpt import FptConfig, detect_supertypes, solve_fpt, solve_low_potential
from dagreal.io import format_instance, random_instance
from dagreal.potential import (
    InfeasibleStep,
    PrefixState,
    check_ordering,
    insert_at,
    move_block,
    omega,
    partial_ordering,
    potential_of,
    recurrence_step,
    splice_out,
    step,
)
from dagreal.reduction import (
    ThreePartitionInstance,
    counting_identities,
    extract_partition,
    reduce,
    verify,
    witness_from_partition,
)

from helpers import (
    FIG2,
    all_multisets,
    fig3,
    good_then_bad,
    random_balanced,
    random_feasible_ordering,
    record,
    seq_of,
)


def test_criterion_1_fig2(tmp_path, capsys):
    t0 = time.perf_counter()
    out = solve_exact(normalize(FIG2))
    elapsed = time.perf_counter() - t0
    path = tmp_path / "fig2.txt"
    path.write_text(format_instance(FIG2))
    code = main(["trace", str(path)])
    lines = capsys.readouterr().out.splitlines()
    got = {i: lines[i - 1].split(": ")[1].split(" ")[0] for i in (3, 7, 8)}
    want = {3: "(3,1,0)", 7: "(4,1,1)", 8: "(3,2,0)"}
    ok = out.realizable and elapsed < 1.0 and code == 0 and got == want
    record(1, ok, f"REALIZABLE={out.realizable} in {elapsed * 1000:.1f} ms; "
                  f"p3={got[3]} p7={got[7]} p8={got[8]}")
    assert ok


def test_criterion_2_fig3_family():
    cfg = FptConfig(high_threshold=16, prefix_suffix_cap=8, nonrepeating_cap=8, supertype_len_cap=4)
    failures = []
    slowest = 0.0
    for k in range(1, 11):
        pairs = fig3(k)
        t0 = time.perf_counter()
        s = normalize(pairs)
        realizable = solve_exact(s).realizable
        peak = max(map(omega, check_ordering(pairs).trace))
        low = solve_low_potential(s, cfg, Budget())
        elapsed = time.perf_counter() - t0
        slowest = max(slowest, elapsed)
        fill = low.stats.get("filling", {})
        ok = (realizable and peak == 6 and low.realizable and verify(s, low.witness)
              and fill.get("supertypes") == [["(2,1)", "(3,4)"]] and fill.get("f") == [k - 1]
              and elapsed < 1.0)
        if not ok:
            failures.append((k, realizable, peak, fill, elapsed))
    record(2, not failures, f"k=1..10, max omega 6, f1=k-1, slowest {slowest * 1000:.1f} ms"
           + (f"; failures {failures}" if failures else ""))
    assert not failures


def test_criterion_3_oracle_equivalence():
    t0 = time.perf_counter()
    disagreements = []
    limited = 0
    exhaustive = 0
    for pairs in all_multisets(6, 2):
        s = seq_of(pairs)
        exhaustive += 1
        try:
            got = solve_exact(s).verdict
        except ResourceLimit:
            limited += 1
            continue
        if got is not brute_force_oracle(s):
            disagreements.append(pairs)
    rng = random.Random(20240601)
    randoms = 0
    for i in range(10_000):
        n, delta = rng.randint(1, 7), rng.randint(1, 3)
        kind = i % 3
        if kind == 0:
            pairs = random_instance(n, delta, rng.randrange(2**32))
        elif kind == 1:
            pairs = random_instance(n, delta, rng.randrange(2**32), shuffle_degrees=True)
        else:
            pairs = random_balanced(rng, n, delta)
        s = seq_of(pairs)
        randoms += 1
        try:
            got = solve_exact(s).verdict
        except ResourceLimit:
            limited += 1
            continue
        if got is not brute_force_oracle(s):
            disagreements.append(pairs)
    elapsed = time.perf_counter() - t0
    ok = not disagreements and not limited and elapsed < 600
    record(3, ok, f"{exhaustive} exhaustive + {randoms} random instances, "
                  f"{len(disagreements)} disagreements, {limited} budget stops, {elapsed:.1f} s")
    assert ok


def test_criterion_4_reduction_round_trip():
    cases = [
        (ThreePartitionInstance((3,) * 6, 2, 9), [(1, 2, 3), (4, 5, 6)], 630, 648),
        (ThreePartitionInstance((4, 4, 5, 4, 5, 4), 2, 13), [(1, 2, 3), (4, 5, 6)], 1326, 1352),
    ]
    details = []
    ok = True
    for tp, triples, xi, dx in cases:
        t0 = time.perf_counter()
        ri = reduce(tp)
        real = witness_from_partition(tp, triples)
        valid = bool(verify(ri.sequence, real))
        got = extract_partition(ri, real)
        x_ids = {v for v, r in enumerate(ri.roles, 1) if r[0] == "X"}
        xx = sum(1 for u, v in real.arcs if u in x_ids and v in x_ids)
        summed = sum(p.in_deg for p, r in zip(ri.sequence.pairs, ri.roles) if r[0] == "X")
        elapsed = time.perf_counter() - t0
        sums_ok = len(got) == tp.m and all(sum(tp.a[i - 1] for i in t) == tp.big_b for t in got)
        case_ok = (valid and sums_ok and xx == xi and summed == dx
                   and counting_identities(tp.m, tp.big_b) == (dx, xi) and elapsed < 1.0)
        ok &= case_ok
        details.append(f"B={tp.big_b}: xx={xx} dX={summed} triples={got} {elapsed * 1000:.0f} ms")
    record(4, ok, "; ".join(details))
    assert ok


def _potentials(delta, max_value):
    def rec(prefix, left, cap):
        if len(prefix) == delta:
            yield tuple(prefix)
            return
        for v in range(min(left, cap) + 1):
            yield from rec(prefix + [v], left - v, v)
    yield from rec([], max_value, max_value)


def _compare(p, pair):
    try:
        slow = step(PrefixState.from_potential(p), pair).potential
    except InfeasibleStep:
        slow = None
    try:
        fast = recurrence_step(p, pair)
    except InfeasibleStep:
        fast = None
    return slow == fast


def test_criterion_5_recurrence_cross_check():
    mismatches = 0
    grid = 0
    for delta in range(1, 4):
        for p in _potentials(delta, 9):
            for a in range(delta + 1):
                for b in range(delta + 1):
                    grid += 1
                    mismatches += not _compare(p, P(a, b))
    rng = random.Random(5)
    for _ in range(100_000):
        delta = rng.randint(1, 5)
        rem = [rng.randint(1, delta) for _ in range(rng.randint(0, 8))]
        mismatches += not _compare(potential_of(rem, delta), P(rng.randint(0, delta), rng.randint(0, delta)))
    record(5, mismatches == 0, f"{grid} grid cases + 100000 random, {mismatches} mismatches")
    assert mismatches == 0


def test_criterion_6_structural_lemmas():
    rng = random.Random(6)
    counts = dict(splice=0, swap=0, insert=0, sort=0)
    bad = []
    for _ in range(1000):
        delta = rng.randint(1, 3)
        ordering = random_feasible_ordering(rng, rng.randint(2, 12), delta, rng.choice([0.4, 0.7, 0.9]))
        trace = check_ordering(ordering).trace
        assert check_ordering(ordering).feasible
        n = len(ordering)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                if trace[i] != trace[j]:
                    continue
                counts["splice"] += 1
                if not check_ordering(splice_out(ordering, i, j)).feasible:
                    bad.append(("splice", ordering, i, j))
                for k in range(j + 1, n + 1):
                    if trace[k] == trace[i]:
                        counts["swap"] += 1
                        if not check_ordering(move_block(ordering, i, j, k)).feasible:
                            bad.append(("swap", ordering, i, j, k))
        for st in detect_supertypes(trace, ordering, n):
            block = partial_ordering(st.body, st.boundary_potential)
            for i, p in enumerate(trace):
                if p == st.boundary_potential:
                    counts["insert"] += 1
                    if not check_ordering(insert_at(ordering, block, i)).feasible:
                        bad.append(("insert", ordering, st, i))
        high = [i for i, p in enumerate(trace) if omega(p) >= delta * delta]
        for x in high:
            for y in high:
                if x < y:
                    counts["sort"] += 1
                    middle = good_then_bad(ordering[x:y])
                    if not check_ordering(ordering[:x] + middle + ordering[y:]).feasible:
                        bad.append(("sort", ordering, x, y))
    ok = not bad and all(counts.values())
    record(6, ok, f"1000 orderings; checked {counts}; {len(bad)} counterexamples")
    assert ok, bad[:3]


def test_criterion_7_qualified_negatives(tmp_path, capsys):
    # full caps are astronomically large once delta >= 3, so a capped run on
    # an unrealizable instance must answer UNKNOWN, never UNREALIZABLE
    pairs = [P(0, 2), P(0, 4)] + [P(2, 1), P(3, 4)] * 6 + [P(3, 0), P(3, 0)]
    s = normalize(pairs)
    cfg = FptConfig.for_sequence(s)
    capped = solve_fpt(s, cfg).verdict
    proved = solve_exact(s).verdict
    path = tmp_path / "hard.txt"
    path.write_text(format_instance(pairs))
    code = main(["solve", str(path), "--mode", "fpt"])
    capsys.readouterr()
    tiny = seq_of([(0, 2), (2, 0)])
    full = solve_fpt(tiny, FptConfig.full(tiny)).verdict
    ok = (not cfg.exhaustive and capped is Verdict.UNKNOWN and code == 2
          and proved is Verdict.UNREALIZABLE and full is Verdict.UNREALIZABLE)
    record(7, ok, f"delta=3 capped fpt says {capped.value} (exit {code}) where exact proves "
                  f"{proved.value}; delta=2 full-cap fpt says {full.value}")
    assert ok


def test_criterion_8_budget_contract(tmp_path, capsys):
    codes = []
    leaked = False
    for seed in range(5):
        path = tmp_path / f"r{seed}.txt"
        path.write_text(format_instance(random_instance(30, 3, seed)))
        code = main(["solve", str(path), "--budget", "10"])
        text = capsys.readouterr().out
        codes.append(code)
        leaked |= "REALIZABLE" in text
    # default budget on the oracle corpus: solve through the CLI, never exit 2
    rng = random.Random(8)
    unknown = 0
    corpus = list(all_multisets(6, 2))
    sample = corpus + [random_balanced(rng, rng.randint(1, 7), rng.randint(1, 3)) for _ in range(300)]
    for idx, pairs in enumerate(sample):
        path = tmp_path / "c.txt"
        path.write_text(format_instance(pairs))
        unknown += main(["solve", str(path)]) == 2
        capsys.readouterr()
    ok = all(c == 2 for c in codes) and not leaked and unknown == 0
    record(8, ok, f"--budget 10 exit codes {codes}; {unknown} UNKNOWN on {len(sample)} corpus instances")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
