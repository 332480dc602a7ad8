"""Potential vectors of topological orderings.

For a prefix v_1..v_i of an ordering, entry l (1-based) of the potential
counts prefix vertices that still owe at least l arcs to the suffix. Vectors
are plain tuples of length delta; index 0 holds the l=1 count.

The ground truth is a multiset simulation (``step``): every new vertex draws
its in-arcs from the prefix vertices with the largest remaining outdegree.
``recurrence_step`` is the closed-form case analysis of the same update and
``advance`` a histogram version used in the solvers' hot loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import DegreePair, Realization

Potential = tuple  # tuple[int, ...]


class InfeasibleStep(ValueError):
    pass


class InfeasibleOrdering(ValueError):
    pass


class PotentialMismatch(ValueError):
    pass


def omega(p: Sequence[int]) -> int:
    return sum(p)


def zero(delta: int) -> Potential:
    return (0,) * delta


def potential_of(remaining: Sequence[int], delta: int) -> Potential:
    counts = [0] * delta
    for r in remaining:
        for l in range(min(r, delta)):
            counts[l] += 1
    return tuple(counts)


def remaining_of(p: Sequence[int]) -> tuple[int, ...]:
    """Inverse of ``potential_of`` (zeros dropped, descending)."""
    delta = len(p)
    out = []
    for l in range(delta, 0, -1):
        exact = p[l - 1] - (p[l] if l < delta else 0)
        out.extend([l] * exact)
    return tuple(out)


@dataclass(frozen=True)
class PrefixState:
    remaining: tuple[int, ...]  # descending, positive entries only
    delta: int

    @classmethod
    def empty(cls, delta: int) -> "PrefixState":
        return cls((), delta)

    @classmethod
    def from_potential(cls, p: Sequence[int]) -> "PrefixState":
        return cls(remaining_of(p), len(p))

    @property
    def potential(self) -> Potential:
        return potential_of(self.remaining, self.delta)


def step(state: PrefixState, pair: DegreePair) -> PrefixState:
    a, b = pair
    if b > state.delta:
        raise ValueError(f"out_deg {b} exceeds delta={state.delta}")
    rem = list(state.remaining)
    if a > len(rem):
        raise InfeasibleStep(f"in_deg {a} > {len(rem)} available prefix vertices")
    # rem is sorted descending, so the first a entries are the largest;
    # ties go to whichever sits first, the resulting multiset is the same
    for k in range(a):
        rem[k] -= 1
    if b:
        rem.append(b)
    rem = sorted((r for r in rem if r), reverse=True)
    return PrefixState(tuple(rem), state.delta)


def recurrence_step(p: Sequence[int], pair: DegreePair) -> Potential:
    delta = len(p)
    d, b = pair
    if delta and d > p[0]:
        raise InfeasibleStep(f"in_deg {d} > p[1]={p[0]}")
    if not delta and d:
        raise InfeasibleStep("no prefix vertices")
    new = []
    for j in range(1, delta + 1):
        pj = p[j - 1]
        if j < delta:
            pj1 = p[j]
            # overlapping cases: first match wins
            if pj1 >= d:
                v = pj
            elif pj >= d:
                v = pj - (d - pj1)
            else:
                v = pj1
        else:
            v = max(0, pj - d)
        new.append(v + (1 if b >= j else 0))
    return tuple(new)


def advance(p: Potential, a: int, b: int) -> Optional[Potential]:
    """Histogram update; returns None when the step is infeasible."""
    delta = len(p)
    if delta == 0:
        return p if a == 0 and b == 0 else None
    if a > p[0]:
        return None
    hist = [p[l] - p[l + 1] for l in range(delta - 1)]
    hist.append(p[delta - 1])
    need = a
    # hist[l] counts vertices owing exactly l+1 arcs; serve the largest first.
    # A vertex moved down one bucket must not be served twice.
    moved = 0
    l = delta - 1
    while need and l >= 0:
        avail = hist[l]
        take = avail if avail < need else need
        hist[l] = avail - take + moved
        moved = take
        need -= take
        l -= 1
    if l >= 0:
        hist[l] += moved
    # moved out of bucket 0 means the vertex is saturated
    if b:
        hist[b - 1] += 1
    out = [0] * delta
    acc = 0
    for l in range(delta - 1, -1, -1):
        acc += hist[l]
        out[l] = acc
    return tuple(out)


@dataclass(frozen=True)
class OrderingCheck:
    feasible: bool
    trace: tuple[Potential, ...]  # p_0 .. p_k for the feasible prefix
    position: Optional[int] = None  # 1-based position of the failing element

    def __bool__(self) -> bool:
        return self.feasible


def _delta_of(ordering: Sequence[DegreePair]) -> int:
    return max((max(p) for p in ordering), default=0)


def run_trace(
    ordering: Sequence[DegreePair], start: Potential
) -> tuple[tuple[Potential, ...], Optional[int]]:
    """Fold ``step`` over ordering from ``start``; returns (trace, fail_pos)."""
    state = PrefixState.from_potential(start)
    trace = [tuple(start)]
    for pos, pair in enumerate(ordering, 1):
        try:
            state = step(state, pair)
        except InfeasibleStep:
            return tuple(trace), pos
        trace.append(state.potential)
    return tuple(trace), None


def check_ordering(
    ordering: Sequence[DegreePair], delta: Optional[int] = None
) -> OrderingCheck:
    if delta is None:
        delta = _delta_of(ordering)
    trace, fail = run_trace(ordering, zero(delta))
    if fail is not None:
        return OrderingCheck(False, trace, fail)
    if any(trace[-1]):
        # leftover out-arcs with nobody to receive them
        return OrderingCheck(False, trace, len(ordering))
    return OrderingCheck(True, trace)


def well_connect(ordering: Sequence[DegreePair]) -> Realization:
    placed: list[list[int]] = []  # [remaining, vertex] in placement order
    arcs = []
    for v, (a, b) in enumerate(ordering, 1):
        live = [e for e in placed if e[0] > 0]
        if a > len(live):
            raise InfeasibleOrdering(f"position {v}: in_deg {a} > {len(live)}")
        live.sort(key=lambda e: (-e[0], e[1]))
        for e in live[:a]:
            e[0] -= 1
            arcs.append((e[1], v))
        placed.append([b, v])
    if any(e[0] for e in placed):
        raise InfeasibleOrdering("unmatched out-arcs remain at the end")
    n = len(ordering)
    return Realization(
        n, tuple(sorted(arcs)), tuple(DegreePair(*p) for p in ordering), tuple(range(1, n + 1))
    )


def potential_ge(p: Sequence[int], q: Sequence[int]) -> bool:
    if len(p) != len(q):
        raise ValueError("potentials of different length")
    sp = sq = 0
    for x, y in zip(p, q):
        sp += x
        sq += y
        if sp < sq:
            return False
    return True


def min_potential(x: int, delta: int) -> Potential:
    if delta < 1:
        raise ValueError("delta must be >= 1")
    hi, r = divmod(x, delta)
    return tuple(hi + 1 if j <= r else hi for j in range(1, delta + 1))


@dataclass(frozen=True)
class PartialOrdering:
    body: tuple[DegreePair, ...]
    input_potential: Potential
    output_potential: Potential


def partial_ordering(body: Sequence[DegreePair], input_potential: Potential) -> PartialOrdering:
    """Run ``body`` from ``input_potential``; raises InfeasibleOrdering."""
    trace, fail = run_trace(body, tuple(input_potential))
    if fail is not None:
        raise InfeasibleOrdering(f"block infeasible at element {fail}")
    return PartialOrdering(tuple(body), tuple(input_potential), trace[-1])


def _trace_or_raise(ordering: Sequence[DegreePair], delta: Optional[int]) -> tuple:
    chk = check_ordering(ordering, delta)
    if not chk.feasible:
        raise InfeasibleOrdering(f"ordering infeasible at position {chk.position}")
    return chk.trace


def splice_out(
    ordering: Sequence[DegreePair], i: int, j: int, delta: Optional[int] = None
) -> tuple[DegreePair, ...]:
    """Drop elements i+1..j (1-based) when p_i == p_j."""
    if not 0 <= i <= j <= len(ordering):
        raise IndexError(f"bad cut {i}..{j}")
    trace = _trace_or_raise(ordering, delta)
    if trace[i] != trace[j]:
        raise PotentialMismatch(f"p_{i}={trace[i]} != p_{j}={trace[j]}")
    return tuple(ordering[:i]) + tuple(ordering[j:])


def insert_at(
    ordering: Sequence[DegreePair], block: PartialOrdering, i: int, delta: Optional[int] = None
) -> tuple[DegreePair, ...]:
    """Insert a balanced block after position i whose potential it matches."""
    if not 0 <= i <= len(ordering):
        raise IndexError(f"bad position {i}")
    if not block.body:
        return tuple(ordering)
    if delta is None:
        delta = max(_delta_of(ordering), _delta_of(block.body))
    trace = _trace_or_raise(ordering, delta)
    if block.input_potential != block.output_potential:
        raise PotentialMismatch("block is not potential-neutral")
    if tuple(block.input_potential) != trace[i]:
        raise PotentialMismatch(f"block potential {block.input_potential} != p_{i}={trace[i]}")
    return tuple(ordering[:i]) + block.body + tuple(ordering[i:])


def move_block(
    ordering: Sequence[DegreePair], i: int, j: int, k: int, delta: Optional[int] = None
) -> tuple[DegreePair, ...]:
    """phi[1,i] phi[j+1,k] phi[i+1,j] phi[k+1,n] for p_i == p_j == p_k."""
    if not 0 <= i <= j <= k <= len(ordering):
        raise IndexError(f"bad positions {i},{j},{k}")
    trace = _trace_or_raise(ordering, delta)
    if not trace[i] == trace[j] == trace[k]:
        raise PotentialMismatch(f"p_{i}, p_{j}, p_{k} differ")
    o = tuple(ordering)
    return o[:i] + o[j:k] + o[i:j] + o[k:]
