"""Complete decision procedure by memoized search over (type counts, potential).

Whether the unplaced elements can still be ordered depends only on which
elements remain and on the current potential, so failed states are memoized
on exactly that pair. Candidate types are restricted to opposed-order minimal
ones among the remaining types.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .core import (
    Budget,
    DegreePair,
    DegreeSequence,
    Outcome,
    ResourceLimit,
    TypeTable,
    Verdict,
    necessary_checks,
    opposed_le,
    type_table,
)
from .potential import Potential, advance, check_ordering, well_connect, zero


class TooLarge(ValueError):
    pass


ORACLE_LIMIT = 9


@dataclass(frozen=True)
class SearchState:
    remaining: tuple[int, ...]  # multiplicities aligned with the TypeTable
    potential: Potential


def _as_budget(budget: Union[None, int, Budget]) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget() if budget is None else Budget(budget)


def _lower_types(types: Sequence[DegreePair]) -> list[list[int]]:
    return [
        [u for u in range(len(types)) if u != t and opposed_le(types[u], types[t])]
        for t in range(len(types))
    ]


def _candidates(types, counts, p, below, prune) -> list[int]:
    avail = p[0] if p else 0
    cands = [t for t in range(len(types)) if counts[t] and types[t][0] <= avail]
    if prune:
        cands = [t for t in cands if not any(counts[u] for u in below[t])]
    # speed heuristic only: large surplus first
    cands.sort(key=lambda t: (types[t][0] - types[t][1], t))
    return cands


def pruned_candidates(state: SearchState, table: TypeTable) -> list[int]:
    types = table.pairs
    return _candidates(types, state.remaining, state.potential, _lower_types(types), True)


def search_completion(
    types: Sequence[DegreePair],
    counts: Sequence[int],
    start: Potential,
    budget: Budget,
    prune: bool = True,
    failed: Optional[set] = None,
) -> Optional[list[int]]:
    """Order every remaining element from potential ``start`` down to zero.

    Returns the chosen type indices, or None if no such ordering exists.
    """
    counts = list(counts)
    if failed is None:
        failed = set()
    below = _lower_types(types)
    left = sum(counts)
    # arc conservation: what is owed must equal what the rest can absorb
    owed = sum(start)
    if sum(c * (a - b) for c, (a, b) in zip(counts, types)) != owed:
        return None
    budget.tick()
    if left == 0:
        return [] if not owed else None
    if (tuple(counts), start) in failed:
        return None

    path: list[int] = []
    stack = [[start, _candidates(types, counts, start, below, prune), 0]]
    while stack:
        frame = stack[-1]
        p, cands, idx = frame
        if idx == len(cands):
            failed.add((tuple(counts), p))
            stack.pop()
            if path:
                t = path.pop()
                counts[t] += 1
                left += 1
            continue
        frame[2] = idx + 1
        t = cands[idx]
        q = advance(p, *types[t])
        if q is None:
            continue
        counts[t] -= 1
        key = (tuple(counts), q)
        if key in failed:
            counts[t] += 1
            continue
        budget.tick()
        path.append(t)
        left -= 1
        if left == 0:
            if not any(q):
                return path
            failed.add(key)
            path.pop()
            counts[t] += 1
            left += 1
            continue
        stack.append([q, _candidates(types, counts, q, below, prune), 0])
    return None


def _branch_worker(types, counts, start, limit, prune):
    budget = Budget(limit)
    try:
        return search_completion(types, counts, start, budget, prune), budget.visits, None
    except ResourceLimit as exc:
        return None, budget.visits, (exc.states, exc.millis)


def _solve_parallel(types, counts, delta, budget: Budget, prune, threads):
    start = zero(delta)
    roots = _candidates(types, counts, start, _lower_types(types), prune)
    jobs = []
    for t in roots:
        q = advance(start, *types[t])
        if q is None:
            continue
        sub = list(counts)
        sub[t] -= 1
        jobs.append((t, sub, q))
    remaining_budget = None if budget.limit is None else max(budget.limit - budget.visits, 0)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(_branch_worker, types, sub, q, remaining_budget, prune)
            for _, sub, q in jobs
        ]
        results = [f.result() for f in futures]
    limited = None
    # first success in canonical branch order, independent of timing
    for (t, _, _), (path, visits, lim) in zip(jobs, results):
        budget.visits += visits
        if path is not None:
            return [t] + path
        if lim is not None and limited is None:
            limited = lim
    if limited is not None:
        raise ResourceLimit(budget.visits, budget.millis)
    return None


def solve_exact(
    seq: DegreeSequence,
    budget: Union[None, int, Budget] = None,
    prune: bool = True,
    threads: int = 1,
) -> Outcome:
    """Decide realizability; raises ResourceLimit when the budget runs out."""
    budget = _as_budget(budget)
    screen = necessary_checks(seq)
    if not screen:
        return Outcome(Verdict.UNREALIZABLE, stats={"reason": screen.reason, "visits": 0})
    table = type_table(seq)
    types = table.pairs
    counts = list(table.multiplicities)
    if threads > 1 and seq.n:
        path = _solve_parallel(types, counts, seq.delta, budget, prune, threads)
    else:
        path = search_completion(types, counts, zero(seq.delta), budget, prune)
    stats = {"visits": budget.visits, "millis": round(budget.millis, 3)}
    if path is None:
        return Outcome(Verdict.UNREALIZABLE, stats=stats)
    ordering = tuple(types[t] for t in path)
    witness = well_connect(ordering).with_isolates(seq.isolates)
    return Outcome(Verdict.REALIZABLE, witness, ordering, stats)


def multiset_permutations(pairs: Sequence[DegreePair]) -> Iterator[tuple[DegreePair, ...]]:
    """Distinct permutations of a multiset, in lexicographic order."""
    items = sorted(pairs)
    n = len(items)
    if n == 0:
        yield ()
        return
    while True:
        yield tuple(items)
        # next lexicographic permutation (handles repeats)
        i = n - 2
        while i >= 0 and items[i] >= items[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while items[j] <= items[i]:
            j -= 1
        items[i], items[j] = items[j], items[i]
        items[i + 1 :] = reversed(items[i + 1 :])


def brute_force_oracle(seq: DegreeSequence, limit: int = ORACLE_LIMIT) -> Verdict:
    if seq.n > limit:
        raise TooLarge(f"oracle guard: n={seq.n} > {limit}")
    for perm in multiset_permutations(seq.pairs):
        if check_ordering(perm, seq.delta).feasible:
            return Verdict.REALIZABLE
    return Verdict.UNREALIZABLE


def _chain_key(p: DegreePair):
    return (p.in_deg, -p.out_deg)


def solve_chain(seq: DegreeSequence, budget: Union[None, int, Budget] = None) -> Outcome:
    budget = _as_budget(budget)
    types = type_table(seq).pairs
    for x in range(len(types)):
        for y in range(x + 1, len(types)):
            if not (opposed_le(types[x], types[y]) or opposed_le(types[y], types[x])):
                return Outcome(Verdict.NOT_A_CHAIN, stats={"incomparable": (types[x], types[y])})
    budget.tick(max(seq.n, 1))
    ordering = tuple(sorted(seq.pairs, key=_chain_key))
    stats = {"visits": budget.visits, "millis": round(budget.millis, 3)}
    if not necessary_checks(seq) or not check_ordering(ordering, seq.delta).feasible:
        return Outcome(Verdict.UNREALIZABLE, stats=stats)
    witness = well_connect(ordering).with_isolates(seq.isolates)
    return Outcome(Verdict.REALIZABLE, witness, ordering, stats)
