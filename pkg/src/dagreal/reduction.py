"""3-Partition to DAG realization, plus witness checking.

A 3-Partition instance (A, m, B) becomes a degree sequence made of x-elements
arranged in blocks X_0..X_m, which must form a complete DAG, and one
(a_i, a_i) element per integer. The a-vertices have to fill the m gaps
between consecutive blocks, each gap taking a triple that sums to B.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Optional, Sequence

from .core import DegreePair, DegreeSequence, Realization, normalize


class InvalidInstance(ValueError):
    pass


class InvalidPartition(ValueError):
    pass


class MalformedRealization(ValueError):
    pass


@dataclass(frozen=True)
class ThreePartitionInstance:
    a: tuple[int, ...]
    m: int
    big_b: int

    def __post_init__(self):
        m, B = self.m, self.big_b
        if m < 1:
            raise InvalidInstance("m must be >= 1")
        if len(self.a) != 3 * m:
            raise InvalidInstance(f"expected {3 * m} integers, got {len(self.a)}")
        if sum(self.a) != m * B:
            raise InvalidInstance(f"sum {sum(self.a)} != m*B = {m * B}")
        for i, x in enumerate(self.a, 1):
            if not Fraction(B, 4) < x < Fraction(B, 2):
                raise InvalidInstance(f"a_{i}={x} not strictly between B/4 and B/2")


def x_element(i: int, j: int, m: int, B: int) -> DegreePair:
    """Degree pair of x_i^j."""
    if i == 0:
        return DegreePair(j, 2 * m * B - j)
    if i == m:
        return DegreePair((2 * m - 1) * B + j + 1, B - 1 - j)
    if j < B:
        return DegreePair((2 * i - 1) * B + j + 1, (2 * m - 2 * i + 1) * B - 1 - j)
    return DegreePair((2 * i - 1) * B + j, (2 * m - 2 * i + 1) * B - j)


def block_size(i: int, m: int, B: int) -> int:
    return B if i in (0, m) else 2 * B


@dataclass(frozen=True)
class ReducedInstance:
    sequence: DegreeSequence
    roles: tuple[tuple, ...]  # ("X", i, j) or ("ALPHA", i), aligned with sequence.pairs
    source: ThreePartitionInstance


def reduce(tp: ThreePartitionInstance) -> ReducedInstance:
    m, B = tp.m, tp.big_b
    pairs, roles = [], []
    for i in range(m + 1):
        for j in range(block_size(i, m, B)):
            pairs.append(x_element(i, j, m, B))
            roles.append(("X", i, j))
    for idx, x in enumerate(tp.a, 1):
        pairs.append(DegreePair(x, x))
        roles.append(("ALPHA", idx))
    return ReducedInstance(normalize(pairs), tuple(roles), tp)


def counting_identities(m: int, B: int) -> tuple[int, int]:
    """(d^-(X), xi) closed forms, cross-checked against direct summation."""
    d_minus_x = 2 * m * m * B * B
    xi = 2 * m * m * B * B - m * B
    summed = sum(
        x_element(i, j, m, B).in_deg for i in range(m + 1) for j in range(block_size(i, m, B))
    )
    if summed != d_minus_x:
        raise AssertionError(f"indegree sum {summed} != closed form {d_minus_x}")
    n_x = 2 * m * B
    if n_x * (n_x - 1) // 2 != xi:
        raise AssertionError("complete-DAG arc count disagrees with closed form")
    return d_minus_x, xi


def witness_from_partition(
    tp: ThreePartitionInstance, triples: Sequence[Sequence[int]]
) -> Realization:
    """Block-structured realization from a partition (1-based indices into a)."""
    m, B = tp.m, tp.big_b
    flat = sorted(i for t in triples for i in t)
    if len(triples) != m or any(len(t) != 3 for t in triples) or flat != list(range(1, 3 * m + 1)):
        raise InvalidPartition("triples must partition 1..3m into m groups of three")
    for t in triples:
        if sum(tp.a[i - 1] for i in t) != B:
            raise InvalidPartition(f"triple {tuple(t)} sums to {sum(tp.a[i - 1] for i in t)}, not {B}")

    # vertex ids follow reduce() element order
    blocks = []
    v = 0
    for i in range(m + 1):
        size = block_size(i, m, B)
        blocks.append(list(range(v + 1, v + size + 1)))
        v += size
    n_x = v
    a_vertex = {idx: n_x + idx for idx in range(1, 3 * m + 1)}

    arcs = []
    x_order = [u for ids in blocks for u in ids]
    for s, u in enumerate(x_order):
        for w in x_order[s + 1 :]:
            arcs.append((u, w))

    order = []
    for g, trip in enumerate(triples):
        senders = blocks[g] if g == 0 else blocks[g][B:]
        receivers = blocks[g + 1][:B]
        si = ri = 0
        for idx in trip:
            quota = tp.a[idx - 1]
            u = a_vertex[idx]
            for w in senders[si : si + quota]:
                arcs.append((w, u))
            for w in receivers[ri : ri + quota]:
                arcs.append((u, w))
            si += quota
            ri += quota
        order.extend(blocks[g])
        order.extend(a_vertex[idx] for idx in trip)
    order.extend(blocks[m])

    degrees = reduce(tp).sequence.pairs
    return Realization(len(degrees), tuple(sorted(arcs)), degrees, tuple(order))


class Reason(enum.Enum):
    SELF_LOOP = "SELF_LOOP"
    DUPLICATE_ARC = "DUPLICATE_ARC"
    BAD_VERTEX = "BAD_VERTEX"
    CYCLE = "CYCLE"
    DEGREE_MISMATCH = "DEGREE_MISMATCH"


@dataclass(frozen=True)
class Check:
    valid: bool
    reason: Optional[Reason] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.valid


def topological_order(real: Realization) -> tuple[int, ...]:
    ts = TopologicalSorter({v: () for v in range(1, real.n + 1)})
    for u, v in real.arcs:
        ts.add(v, u)
    return tuple(ts.static_order())


def verify(seq: DegreeSequence, real: Realization) -> Check:
    seen = set()
    for u, v in real.arcs:
        if not (1 <= u <= real.n and 1 <= v <= real.n):
            return Check(False, Reason.BAD_VERTEX, f"arc ({u},{v}) outside 1..{real.n}")
        if u == v:
            return Check(False, Reason.SELF_LOOP, f"loop at {u}")
        if (u, v) in seen:
            return Check(False, Reason.DUPLICATE_ARC, f"arc ({u},{v}) repeated")
        seen.add((u, v))
    try:
        topological_order(real)
    except CycleError as exc:
        return Check(False, Reason.CYCLE, f"cycle through {exc.args[1]}")
    actual = real.actual_degrees()
    if real.degrees:
        if len(real.degrees) != real.n:
            return Check(False, Reason.DEGREE_MISMATCH, "degree labels do not cover all vertices")
        for v, (want, got) in enumerate(zip(real.degrees, actual), 1):
            if want != got:
                return Check(False, Reason.DEGREE_MISMATCH, f"vertex {v}: want {want}, got {got}")
    if Counter(actual) != seq.full_multiset():
        return Check(False, Reason.DEGREE_MISMATCH, "degree multiset differs from sequence")
    return Check(True)


def extract_partition(ri: ReducedInstance, real: Realization) -> list[tuple[int, ...]]:
    """Recover m triples summing to B from any valid realization.

    Only the realization's degrees and arcs are trusted; roles are
    re-derived. x-vertices are the ones with in+out = 2mB and form a complete
    DAG, so their topological rank is forced; each owes exactly one arc to an
    a-vertex. Grouping a-vertices by the receiver run they feed yields the
    gaps.
    """
    chk = verify(ri.sequence, real)
    if not chk:
        raise MalformedRealization(f"realization does not verify: {chk.reason} {chk.detail}")
    tp = ri.source
    m, B = tp.m, tp.big_b
    deg = real.actual_degrees()
    is_x = [False] + [d.in_deg + d.out_deg == 2 * m * B for d in deg]
    xs = [v for v in range(1, real.n + 1) if is_x[v]]
    av = [v for v in range(1, real.n + 1) if not is_x[v]]
    if len(xs) != 2 * m * B or len(av) != 3 * m:
        raise MalformedRealization("vertex classes have unexpected sizes")

    preds = {v: [] for v in range(1, real.n + 1)}
    succs = {v: [] for v in range(1, real.n + 1)}
    for u, v in real.arcs:
        succs[u].append(v)
        preds[v].append(u)
    for u in av:
        if any(not is_x[w] for w in preds[u] + succs[u]):
            raise MalformedRealization(f"a-vertex {u} touches another a-vertex")

    # rank among x-vertices = number of x in-neighbours (complete DAG)
    rank = {v: sum(is_x[w] for w in preds[v]) for v in xs}
    if sorted(rank.values()) != list(range(2 * m * B)):
        raise MalformedRealization("x-vertices do not form a complete DAG")

    def run(r: int) -> tuple[str, int]:
        # ranks alternate: B senders, B receivers, B senders, ...
        q = r // B
        return ("send" if q % 2 == 0 else "recv", q // 2)

    groups: dict[int, list[int]] = {}
    for u in av:
        gaps_in = {run(rank[w]) for w in preds[u]}
        gaps_out = {run(rank[w]) for w in succs[u]}
        if len(gaps_out) != 1 or len(gaps_in) != 1:
            raise MalformedRealization(f"a-vertex {u} spans several gaps")
        (kind_out, g), = gaps_out
        (kind_in, g_in), = gaps_in
        if kind_out != "recv" or kind_in != "send" or g_in != g:
            raise MalformedRealization(f"a-vertex {u} does not sit in a single gap")
        groups.setdefault(g, []).append(u)

    # vertex v realizes sequence element v only when the labels say so;
    # otherwise a-vertices are matched to the integers by value
    labelled = tuple(real.degrees) == tuple(ri.sequence.pairs)
    alpha_of = {pos: role[1] for pos, role in enumerate(ri.roles, 1) if role[0] == "ALPHA"}
    free = set(range(1, 3 * m + 1))
    picked = []
    for g in range(m):
        members = sorted(groups.get(g, []))
        if len(members) != 3:
            raise MalformedRealization(f"gap {g} holds {len(members)} a-vertices")
        vals = [deg[u - 1].in_deg for u in members]
        if sum(vals) != B:
            raise MalformedRealization(f"gap {g} sums to {sum(vals)}")
        ids = [alpha_of.get(u) if labelled else None for u in members]
        free.difference_update(i for i in ids if i is not None)
        picked.append((vals, ids))
    out = []
    for vals, ids in picked:
        chosen = []
        for val, i in zip(vals, ids):
            if i is None:
                i = min(x for x in free if tp.a[x - 1] == val)
                free.discard(i)
            chosen.append(i)
        out.append(tuple(sorted(chosen)))
    return out
