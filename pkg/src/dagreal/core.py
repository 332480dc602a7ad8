"""Value types for DAG degree-sequence realization.

A degree sequence is a multiset of (indegree, outdegree) pairs. The question
is whether some simple acyclic digraph has exactly these vertex degrees.
"""

from __future__ import annotations

import enum
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional


class InvalidSequence(ValueError):
    """Raised when raw pairs cannot form a degree sequence of a simple DAG."""


class ResourceLimit(RuntimeError):
    """The state-visit budget ran out before a decision was reached."""

    def __init__(self, states: int, millis: float):
        super().__init__(f"budget exhausted after {states} states ({millis:.0f} ms)")
        self.states = states
        self.millis = millis


class DegreePair(NamedTuple):
    in_deg: int
    out_deg: int

    def __str__(self) -> str:
        return f"({self.in_deg},{self.out_deg})"

    @property
    def good(self) -> bool:
        return self.in_deg <= self.out_deg


Ordering = tuple  # tuple[DegreePair, ...]; a candidate topological order


@dataclass(frozen=True)
class DegreeSequence:
    """Normalized instance. ``pairs`` keeps input order; (0,0) pairs are
    counted in ``isolates`` instead."""

    pairs: tuple[DegreePair, ...]
    isolates: int = 0

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def delta(self) -> int:
        return max((max(p) for p in self.pairs), default=0)

    def counter(self) -> Counter:
        return Counter(self.pairs)

    def full_multiset(self) -> Counter:
        """Multiset including the stripped isolated vertices."""
        c = Counter(self.pairs)
        if self.isolates:
            c[DegreePair(0, 0)] += self.isolates
        return c


def normalize(raw: Iterable) -> DegreeSequence:
    pairs = []
    isolates = 0
    for item in raw:
        a, b = item
        if not (isinstance(a, int) and isinstance(b, int)):
            raise InvalidSequence(f"non-integer pair {item!r}")
        if a < 0 or b < 0:
            raise InvalidSequence(f"negative degree in {item!r}")
        if a == 0 and b == 0:
            isolates += 1
        else:
            pairs.append(DegreePair(a, b))
    n = len(pairs)
    for p in pairs:
        # an isolated vertex can never be a neighbour, so the bound uses the
        # stripped count
        if p.in_deg >= n:
            raise InvalidSequence(f"in_deg {p.in_deg} >= n={n} in {p}")
        if p.out_deg >= n:
            raise InvalidSequence(f"out_deg {p.out_deg} >= n={n} in {p}")
    return DegreeSequence(tuple(pairs), isolates)


def opposed_le(p: DegreePair, q: DegreePair) -> bool:
    return p[0] <= q[0] and p[1] >= q[1]


@dataclass(frozen=True)
class Screen:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def necessary_checks(seq: DegreeSequence) -> Screen:
    """Cheap necessary conditions; passing does not imply realizable."""
    total_in = sum(p.in_deg for p in seq.pairs)
    total_out = sum(p.out_deg for p in seq.pairs)
    if total_in != total_out:
        return Screen(False, f"sum mismatch: in={total_in}, out={total_out}")
    if seq.n and not any(p.in_deg == 0 for p in seq.pairs):
        return Screen(False, "no source")
    if seq.n and not any(p.out_deg == 0 for p in seq.pairs):
        return Screen(False, "no sink")
    return Screen(True)


class TypeEntry(NamedTuple):
    pair: DegreePair
    multiplicity: int
    good: bool


@dataclass(frozen=True)
class TypeTable:
    entries: tuple[TypeEntry, ...]

    @property
    def pairs(self) -> tuple[DegreePair, ...]:
        return tuple(e.pair for e in self.entries)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(e.multiplicity for e in self.entries)

    def index(self, pair: DegreePair) -> int:
        return self.pairs.index(pair)

    def __len__(self) -> int:
        return len(self.entries)


def type_table(seq: DegreeSequence) -> TypeTable:
    counts = Counter(seq.pairs)
    return TypeTable(
        tuple(TypeEntry(p, counts[p], p.in_deg <= p.out_deg) for p in sorted(counts))
    )


@dataclass(frozen=True)
class Realization:
    """A witness digraph. Vertices are 1..n; ``degrees[v-1]`` is the pair the
    vertex is meant to realize and ``order`` a topological order, if known."""

    n: int
    arcs: tuple[tuple[int, int], ...]
    degrees: tuple[DegreePair, ...] = ()
    order: tuple[int, ...] = ()

    def indegrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for _, v in self.arcs:
            deg[v] += 1
        return deg[1:]

    def outdegrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for u, _ in self.arcs:
            deg[u] += 1
        return deg[1:]

    def actual_degrees(self) -> tuple[DegreePair, ...]:
        return tuple(
            DegreePair(a, b) for a, b in zip(self.indegrees(), self.outdegrees())
        )

    def with_isolates(self, count: int) -> "Realization":
        if not count:
            return self
        extra = tuple(range(self.n + 1, self.n + count + 1))
        return Realization(
            self.n + count,
            self.arcs,
            self.degrees + (DegreePair(0, 0),) * count,
            self.order + extra if self.order else (),
        )


class Verdict(enum.Enum):
    REALIZABLE = "REALIZABLE"
    UNREALIZABLE = "UNREALIZABLE"
    UNKNOWN = "UNKNOWN"
    NOT_A_CHAIN = "NOT_A_CHAIN"
    NO_HIGH_POTENTIAL = "NO_HIGH_POTENTIAL"
    NO_LOW_POTENTIAL = "NO_LOW_POTENTIAL"


@dataclass
class Outcome:
    verdict: Verdict
    witness: Optional[Realization] = None
    ordering: Optional[tuple[DegreePair, ...]] = None
    stats: dict = field(default_factory=dict)

    @property
    def realizable(self) -> bool:
        return self.verdict is Verdict.REALIZABLE


DEFAULT_BUDGET = 10_000_000


class Budget:
    """Counts state visits and raises ResourceLimit past ``limit``."""

    def __init__(self, limit: Optional[int] = DEFAULT_BUDGET):
        self.limit = limit
        self.visits = 0
        self._t0 = time.perf_counter()

    def tick(self, k: int = 1) -> None:
        self.visits += k
        if self.limit is not None and self.visits > self.limit:
            raise ResourceLimit(self.visits, self.millis)

    @property
    def millis(self) -> float:
        return (time.perf_counter() - self._t0) * 1000.0
