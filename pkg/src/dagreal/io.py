"""Text formats: instances, witnesses, 3-Partition files, DOT export."""

from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

from .core import DegreePair, Realization
from .reduction import ThreePartitionInstance


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


def _ints(tokens: list[str], lineno: int, line: str) -> list[int]:
    out = []
    pos = 0
    for tok in tokens:
        pos = line.index(tok, pos)
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, pos + 1) from None
        pos += len(tok)
    return out


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, raw


def parse_instance(text: str) -> list[DegreePair]:
    pairs = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'a b', got {len(tokens)} fields", lineno)
        a, b = _ints(tokens, lineno, line)
        if a < 0 or b < 0:
            col = line.index(tokens[0 if a < 0 else 1]) + 1
            raise ParseError("degrees must be nonnegative", lineno, col)
        pairs.append(DegreePair(a, b))
    return pairs


def format_instance(pairs: Iterable[Sequence[int]], comments: Sequence[str] = ()) -> str:
    head = "".join(f"# {c}\n" for c in comments)
    return head + "".join(f"{a} {b}\n" for a, b in pairs)


def parse_witness(text: str) -> Realization:
    n: Optional[int] = None
    arcs = []
    order: tuple[int, ...] = ()
    for lineno, line in _content_lines(text):
        s = line.strip()
        if n is None:
            tokens = s.split()
            if len(tokens) != 2 or tokens[0] != "n":
                raise ParseError("expected header 'n <count>'", lineno)
            (n,) = _ints(tokens[1:], lineno, line)
            if n < 0:
                raise ParseError("vertex count must be nonnegative", lineno)
            continue
        if s.startswith("order:"):
            rest = s[len("order:") :]
            order = tuple(_ints(rest.split(), lineno, line))
            continue
        tokens = s.split()
        if len(tokens) != 2:
            raise ParseError(f"expected arc 'u v', got {len(tokens)} fields", lineno)
        u, v = _ints(tokens, lineno, line)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"arc ({u},{v}) outside 1..{n}", lineno)
        arcs.append((u, v))
    if n is None:
        raise ParseError("empty witness file", 1)
    if order and sorted(order) != list(range(1, n + 1)):
        raise ParseError("order line is not a permutation of 1..n", lineno)
    return Realization(n, tuple(arcs), (), order)


def format_witness(real: Realization) -> str:
    lines = [f"n {real.n}"]
    lines += [f"{u} {v}" for u, v in real.arcs]
    if real.order:
        lines.append("order: " + " ".join(map(str, real.order)))
    return "\n".join(lines) + "\n"


def parse_three_partition(text: str) -> ThreePartitionInstance:
    rows = list(_content_lines(text))
    if len(rows) < 2:
        raise ParseError("expected 'm B' then the 3m integers", rows[0][0] if rows else 1)
    lineno, line = rows[0]
    head = line.split()
    if len(head) != 2:
        raise ParseError("expected 'm B'", lineno)
    m, big_b = _ints(head, lineno, line)
    values = []
    for lineno, line in rows[1:]:
        values += _ints(line.split(), lineno, line)
    return ThreePartitionInstance(tuple(values), m, big_b)


def format_three_partition(tp: ThreePartitionInstance) -> str:
    return f"{tp.m} {tp.big_b}\n" + " ".join(map(str, tp.a)) + "\n"


def parse_triples(text: str) -> list[tuple[int, ...]]:
    out = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError("expected 'i j k'", lineno)
        out.append(tuple(_ints(tokens, lineno, line)))
    return out


def format_triples(triples: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(map(str, t)) + "\n" for t in triples)


def to_dot(real: Realization) -> str:
    deg = real.actual_degrees()
    lines = ["digraph {"]
    for v in range(1, real.n + 1):
        a, b = deg[v - 1]
        lines.append(f'  v{v} [label="v{v} ({a}/{b})"];')
    for u, v in sorted(real.arcs):
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_instance(
    n: int, delta: int, seed: int, shuffle_degrees: bool = False, density: float = 0.5
) -> list[DegreePair]:
    """Degrees of a random DAG on n vertices with max degree <= delta.

    With ``shuffle_degrees`` one outdegree unit and one indegree unit are moved
    between vertices, which keeps the sums equal but may break realizability.
    """
    rng = random.Random(seed)
    label = list(range(n))
    rng.shuffle(label)  # topological position -> vertex id
    indeg = [0] * n
    outdeg = [0] * n
    cells = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(cells)
    for i, j in cells:
        u, v = label[i], label[j]
        if outdeg[u] < delta and indeg[v] < delta and rng.random() < density:
            outdeg[u] += 1
            indeg[v] += 1
    if shuffle_degrees and n > 1:
        for deg in (outdeg, indeg):
            donors = [v for v in range(n) if deg[v] > 0]
            takers = [v for v in range(n) if deg[v] < delta]
            if donors and takers:
                d = rng.choice(donors)
                t = rng.choice([v for v in takers if v != d] or [d])
                deg[d] -= 1
                deg[t] += 1
    return [DegreePair(indeg[v], outdeg[v]) for v in range(n)]
