"""Exact solver for the sequence-filling equality system.

Find nonnegative integers f_1..f_k with

    sum_i f_i * occ[e][i] == demand[e]   for every element type e.

Variable counts are tiny in practice, so a bounded depth-first enumeration
with demand propagation is used instead of a general ILP method.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional, Sequence


class MalformedSystem(ValueError):
    pass


@dataclass(frozen=True)
class FillingSystem:
    k: int
    occurrence: tuple[tuple[int, ...], ...]  # occurrence[e][i] = o(e, s_i)
    demand: tuple[int, ...]  # demand[e] = o(e, S) - o(e, phi')
    elements: tuple[Hashable, ...] = ()

    def __post_init__(self):
        if len(self.occurrence) != len(self.demand):
            raise MalformedSystem("occurrence rows and demand length differ")
        for e, row in enumerate(self.occurrence):
            if len(row) != self.k:
                raise MalformedSystem(f"row {e} has {len(row)} columns, expected {self.k}")
            if any(x < 0 for x in row):
                raise MalformedSystem(f"negative occurrence in row {e}")
        for e, d in enumerate(self.demand):
            if d < 0:
                label = self.elements[e] if self.elements else e
                raise MalformedSystem(f"negative demand for {label}: {d}")

    @classmethod
    def build(cls, target: dict, base: dict, blocks: Sequence[dict]) -> "FillingSystem":
        """From multiset counters: ``target`` = S, ``base`` = phi', ``blocks`` = super-types."""
        keys = sorted(set(target) | set(base) | {e for b in blocks for e in b})
        occ = tuple(tuple(b.get(e, 0) for b in blocks) for e in keys)
        dem = tuple(target.get(e, 0) - base.get(e, 0) for e in keys)
        return cls(len(blocks), occ, dem, tuple(keys))

    def residual(self, f: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            d - sum(fi * o for fi, o in zip(f, row))
            for row, d in zip(self.occurrence, self.demand)
        )

    def satisfied_by(self, f: Sequence[int]) -> bool:
        return len(f) == self.k and all(x >= 0 for x in f) and not any(self.residual(f))


def upper_bounds(sys: FillingSystem) -> list[int]:
    bounds = []
    for i in range(sys.k):
        col = [(row[i], d) for row, d in zip(sys.occurrence, sys.demand) if row[i] > 0]
        # an all-zero column cannot help fill anything
        bounds.append(min(d // o for o, d in col) if col else 0)
    return bounds


def solve_filling(sys: FillingSystem) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest solution, or None when infeasible."""
    ub = upper_bounds(sys)
    rows = sys.occurrence
    k = sys.k
    # covered_after[i][e]: some variable with index >= i still touches e
    covered_after = [[False] * len(rows) for _ in range(k + 1)]
    for i in range(k - 1, -1, -1):
        for e, row in enumerate(rows):
            covered_after[i][e] = covered_after[i + 1][e] or row[i] > 0

    f = [0] * k

    def dfs(i: int, res: list[int]) -> bool:
        if any(r and not covered_after[i][e] for e, r in enumerate(res)):
            return False
        if i == k:
            return True
        col = [row[i] for row in rows]
        cur = list(res)
        for v in range(ub[i] + 1):
            if v:
                cur = [r - c for r, c in zip(cur, col)]
                if any(r < 0 for r in cur):
                    break
            f[i] = v
            if dfs(i + 1, cur):
                return True
        f[i] = 0
        return False

    if dfs(0, list(sys.demand)):
        return tuple(f)
    return None
