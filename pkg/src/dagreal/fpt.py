"""Potential-based procedures parameterized by the maximum degree.

Two phases:

* high potential: some prefix reaches value >= delta**2. Guess a short
  opening I that first reaches the bar and a short closing E; everything in
  between is placed as good types then bad types.
* low potential: every prefix stays below delta**2. Guess a short
  non-repeating ordering, then re-inflate its repeatable super-types with
  counts from the filling system.

The theoretical caps are astronomically large for delta >= 3, so every cap
is explicit and a negative answer only counts as a proof when the caps
covered min(theoretical bound, n).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .core import (
    Budget,
    DegreePair,
    DegreeSequence,
    Outcome,
    Verdict,
    necessary_checks,
    type_table,
)
from .exact import _as_budget, search_completion
from .ilp import FillingSystem, solve_filling
from .potential import Potential, advance, check_ordering, omega, well_connect, zero

DEFAULT_PREFIX_CAP = 12
DEFAULT_NONREP_CAP = 16
DEFAULT_SUPERTYPE_CAP = 8
_CLIP = 10**12


def _clipped_pow(base: int, exp: float) -> int:
    if base <= 1:
        return base
    if exp * math.log(base) > math.log(_CLIP):
        return _CLIP
    return min(base ** int(exp), _CLIP)


def theoretical_caps(delta: int) -> tuple[int, int, int]:
    """(prefix/suffix, non-repeating length, super-type length), clipped."""
    if delta <= 0:
        return 0, 0, 0
    short = _clipped_pow(delta, 2 * delta)
    inner = _clipped_pow(delta, 2 * short + 2 * delta) if short < _CLIP else _CLIP
    nonrep = min(short * (inner + short), _CLIP)
    return short, nonrep, short


@dataclass(frozen=True)
class FptConfig:
    high_threshold: int
    prefix_suffix_cap: int
    nonrepeating_cap: int
    supertype_len_cap: int
    exhaustive: bool = False

    @classmethod
    def for_sequence(
        cls,
        seq: DegreeSequence,
        prefix_cap: Optional[int] = DEFAULT_PREFIX_CAP,
        nonrep_cap: Optional[int] = DEFAULT_NONREP_CAP,
        supertype_cap: Optional[int] = DEFAULT_SUPERTYPE_CAP,
    ) -> "FptConfig":
        """Caps are min(theoretical bound, user cap); None means no user cap."""
        delta, n = seq.delta, seq.n
        bounds = theoretical_caps(delta)
        user = (prefix_cap, nonrep_cap, supertype_cap)
        for u in user:
            if u is not None and u < 1:
                raise ValueError("caps must be >= 1")
        eff = [max(1, min(b, n) if u is None else min(b, u, max(n, 1))) for b, u in zip(bounds, user)]
        # beyond n a cap cannot matter, so reaching min(bound, n) is complete
        exhaustive = all(e >= min(b, n) for e, b in zip(eff, bounds))
        return cls(delta * delta, eff[0], eff[1], eff[2], exhaustive)

    @classmethod
    def full(cls, seq: DegreeSequence) -> "FptConfig":
        return cls.for_sequence(seq, None, None, None)


@dataclass(frozen=True)
class SuperType:
    body: tuple[DegreePair, ...]
    boundary_potential: Potential


@dataclass(frozen=True)
class _Occurrence:
    start: int  # trace index of the left boundary
    end: int  # trace index of the right boundary
    supertype: SuperType


def _occurrences(trace: Sequence[Potential], ordering: Sequence[DegreePair], cap: int):
    out = []
    last_seen: dict = {}
    # scanning right to left, last_seen[p] is the nearest later index with p
    nxt = [None] * len(trace)
    for b in range(len(trace) - 1, -1, -1):
        nxt[b] = last_seen.get(trace[b])
        last_seen[trace[b]] = b
    for a, b in enumerate(nxt):
        if b is not None and b - a <= cap:
            out.append(_Occurrence(a, b, SuperType(tuple(ordering[a:b]), trace[a])))
    return out


def detect_supertypes(
    trace: Sequence[Potential], ordering: Sequence[DegreePair], cap: int
) -> list[SuperType]:
    """Blocks between two equal potentials with no recurrence in between."""
    seen = {}
    for occ in _occurrences(trace, ordering, cap):
        seen.setdefault((occ.supertype.body, occ.supertype.boundary_potential), occ.supertype)
    return list(seen.values())


def _has_repetition(occs: Sequence[_Occurrence]) -> bool:
    by_start = {o.start: o for o in occs}
    return any(
        (nxt := by_start.get(o.end)) is not None and nxt.supertype == o.supertype for o in occs
    )


@dataclass
class _Search:
    types: tuple[DegreePair, ...]
    counts: list[int]
    budget: Budget
    stats: dict = field(default_factory=dict)


def _finish(seq: DegreeSequence, ordering, phase: str, stats: dict) -> Outcome:
    chk = check_ordering(ordering, seq.delta)
    if not chk.feasible or Counter(ordering) != Counter(seq.pairs):
        raise AssertionError(f"{phase} phase produced an invalid ordering")
    stats["phase"] = phase
    witness = well_connect(ordering).with_isolates(seq.isolates)
    return Outcome(Verdict.REALIZABLE, witness, tuple(ordering), stats)


def _openings(types, counts, H, cap, budget) -> dict:
    """Distinct (remaining counts, potential) after an opening that first
    reaches value >= H, mapped to one such opening."""
    delta = len(types) and max(max(t) for t in types)
    found: dict = {}
    explored: dict = {}
    counts = list(counts)
    path: list[int] = []

    def dfs(p: Potential):
        budget.tick()
        key = (tuple(counts), p)
        room = cap - len(path)
        if explored.get(key, -1) >= room:
            return
        explored[key] = room
        if room == 0:
            return
        for t, (a, b) in enumerate(types):
            if not counts[t] or a > (p[0] if p else 0):
                continue
            q = advance(p, a, b)
            counts[t] -= 1
            path.append(t)
            if omega(q) >= H:
                found.setdefault((tuple(counts), q), tuple(path))
            else:
                dfs(q)
            path.pop()
            counts[t] += 1

    if delta:
        dfs(zero(delta))
    return found


def _submultisets(counts: Sequence[int], limit: int):
    """All count vectors c <= counts with sum(c) <= limit."""
    k = len(counts)
    cur = [0] * k

    def rec(i: int, left: int):
        if i == k:
            yield tuple(cur)
            return
        for c in range(min(counts[i], left) + 1):
            cur[i] = c
            yield from rec(i + 1, left - c)
        cur[i] = 0

    yield from rec(0, limit)


def solve_high_potential(
    seq: DegreeSequence, cfg: FptConfig, budget: Union[None, int, Budget] = None
) -> Outcome:
    budget = _as_budget(budget)
    table = type_table(seq)
    types, counts = table.pairs, list(table.multiplicities)
    H = cfg.high_threshold
    stats = {"caps": {"prefix": cfg.prefix_suffix_cap}, "exhaustive": cfg.exhaustive}
    if not seq.n:
        return Outcome(Verdict.NO_HIGH_POTENTIAL, stats=stats)
    openings = _openings(types, counts, H, cfg.prefix_suffix_cap, budget)
    stats["openings"] = len(openings)
    good = [t for t, p in enumerate(types) if p.in_deg <= p.out_deg]
    bad = [t for t, p in enumerate(types) if p.in_deg > p.out_deg]
    failed: set = set()
    for (rest, p_open), opening in openings.items():
        for ending in _submultisets(rest, cfg.prefix_suffix_cap):
            budget.tick()
            owed = sum(c * (types[t][0] - types[t][1]) for t, c in enumerate(ending))
            if owed < H:
                continue
            middle = [rest[t] - ending[t] for t in range(len(types))]
            q = p_open
            ok = True
            for t in good + bad:
                for _ in range(middle[t]):
                    q = advance(q, *types[t])
                    if q is None:
                        ok = False
                        break
                if not ok:
                    break
            if not ok or omega(q) < H:
                continue
            tail = search_completion(types, ending, q, budget, True, failed)
            if tail is None:
                continue
            ordering = (
                [types[t] for t in opening]
                + [types[t] for t in good for _ in range(middle[t])]
                + [types[t] for t in bad for _ in range(middle[t])]
                + [types[t] for t in tail]
            )
            stats.update(opening=len(opening), ending=len(tail), visits=budget.visits)
            return _finish(seq, ordering, "high", stats)
    stats["visits"] = budget.visits
    return Outcome(Verdict.NO_HIGH_POTENTIAL, stats=stats)


def _fill(seq_counter: Counter, path: Sequence[DegreePair], trace, cap: int):
    """Try to complete a non-repeating ordering; returns (ordering, f) or None."""
    occs = _occurrences(trace, path, cap)
    if _has_repetition(occs):
        return None
    supertypes = detect_supertypes(trace, path, cap)
    system = FillingSystem.build(seq_counter, Counter(path), [Counter(s.body) for s in supertypes])
    f = solve_filling(system)
    if f is None:
        return None
    first_end = {}
    for o in occs:
        first_end.setdefault(o.supertype, o.end)
    inserts = sorted(
        ((first_end[s], i) for i, s in enumerate(supertypes) if f[i]), reverse=True
    )
    filled = list(path)
    for pos, i in inserts:
        filled[pos:pos] = list(supertypes[i].body) * f[i]
    return filled, f, supertypes


def solve_low_potential(
    seq: DegreeSequence, cfg: FptConfig, budget: Union[None, int, Budget] = None
) -> Outcome:
    budget = _as_budget(budget)
    table = type_table(seq)
    types, counts = table.pairs, list(table.multiplicities)
    H = cfg.high_threshold
    delta = seq.delta
    target = Counter(seq.pairs)
    stats = {
        "caps": {"nonrep": cfg.nonrepeating_cap, "supertype": cfg.supertype_len_cap},
        "exhaustive": cfg.exhaustive,
        "candidates": 0,
        "refill_failures": 0,
    }
    if not seq.n:
        return Outcome(Verdict.REALIZABLE, stats=stats)
    start = zero(delta)
    if H <= 0:
        return Outcome(Verdict.NO_LOW_POTENTIAL, stats=stats)

    path: list[int] = []
    trace: list[Potential] = [start]
    dead: set = set()  # (counts, potential, room) with no way back to zero
    result = None

    def try_candidate():
        stats["candidates"] += 1
        pairs = [types[t] for t in path]
        got = _fill(target, pairs, trace, cfg.supertype_len_cap)
        if got is None:
            return None
        filled, f, supertypes = got
        if Counter(filled) != target or not check_ordering(filled, delta).feasible:
            stats["refill_failures"] += 1
            return None
        stats["filling"] = {
            "nonrepeating": [str(p) for p in pairs],
            "supertypes": [[str(x) for x in s.body] for s in supertypes],
            "f": list(f),
        }
        return filled

    def dfs(p: Potential) -> bool:
        """Returns True when some extension came back to zero potential."""
        nonlocal result
        budget.tick()
        room = cfg.nonrepeating_cap - len(path)
        key = (tuple(counts), p, room)
        if key in dead:
            return False
        back_to_zero = False
        if path and not any(p):
            back_to_zero = True
            result = try_candidate()
            if result is not None:
                return True
        if room:
            for t, (a, b) in enumerate(types):
                if not counts[t] or a > p[0]:
                    continue
                q = advance(p, a, b)
                if omega(q) >= H:
                    continue
                counts[t] -= 1
                path.append(t)
                trace.append(q)
                hit = dfs(q)
                trace.pop()
                path.pop()
                counts[t] += 1
                if result is not None:
                    return True
                back_to_zero = back_to_zero or hit
        if not back_to_zero:
            dead.add(key)
        return back_to_zero

    dfs(start)
    stats["visits"] = budget.visits
    if result is None:
        return Outcome(Verdict.NO_LOW_POTENTIAL, stats=stats)
    return _finish(seq, result, "low", stats)


def solve_fpt(
    seq: DegreeSequence,
    cfg: Optional[FptConfig] = None,
    budget: Union[None, int, Budget] = None,
) -> Outcome:
    budget = _as_budget(budget)
    if cfg is None:
        cfg = FptConfig.for_sequence(seq)
    if not seq.n:
        return Outcome(Verdict.REALIZABLE, well_connect(()).with_isolates(seq.isolates), ())
    screen = necessary_checks(seq)
    if not screen:
        return Outcome(Verdict.UNREALIZABLE, stats={"reason": screen.reason})
    high = solve_high_potential(seq, cfg, budget)
    if high.realizable:
        return high
    low = solve_low_potential(seq, cfg, budget)
    if low.realizable:
        return low
    stats = {
        "high": high.stats,
        "low": low.stats,
        "caps": {
            "prefix": cfg.prefix_suffix_cap,
            "nonrep": cfg.nonrepeating_cap,
            "supertype": cfg.supertype_len_cap,
        },
        "exhaustive": cfg.exhaustive,
        "visits": budget.visits,
    }
    verdict = Verdict.UNREALIZABLE if cfg.exhaustive else Verdict.UNKNOWN
    return Outcome(verdict, stats=stats)
