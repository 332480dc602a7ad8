"""Command-line interface.

Exit codes: 0 realizable / ok, 1 unrealizable / invalid, 2 unknown within
budget, 64 usage error, 65 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections import defaultdict
from typing import Optional, Sequence

from .core import (
    DEFAULT_BUDGET,
    Budget,
    DegreePair,
    DegreeSequence,
    InvalidSequence,
    Outcome,
    Realization,
    ResourceLimit,
    Verdict,
    normalize,
)
from .exact import TooLarge, brute_force_oracle, solve_chain, solve_exact
from .fpt import FptConfig, solve_fpt
from .io import (
    ParseError,
    format_instance,
    format_triples,
    format_witness,
    parse_instance,
    parse_three_partition,
    parse_triples,
    parse_witness,
    random_instance,
    to_dot,
)
from .potential import omega, run_trace, zero
from .reduction import (
    InvalidInstance,
    InvalidPartition,
    MalformedRealization,
    ReducedInstance,
    ThreePartitionInstance,
    extract_partition,
    reduce,
    verify,
    witness_from_partition,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_instance(path: str) -> list[DegreePair]:
    try:
        return parse_instance(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_witness(path: str) -> Realization:
    try:
        return parse_witness(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_tp(path: str) -> ThreePartitionInstance:
    try:
        return parse_three_partition(_read(path))
    except (ParseError, InvalidInstance) as exc:
        raise InputError(f"{path}: {exc}") from None


def _default_budget() -> Optional[int]:
    env = os.environ.get("DAGREAL_BUDGET")
    if env is None:
        return DEFAULT_BUDGET
    try:
        value = int(env)
    except ValueError:
        raise UsageError(f"DAGREAL_BUDGET is not an integer: {env!r}") from None
    return value if value > 0 else None


def relabel(real: Realization, raw: Sequence[DegreePair]) -> Realization:
    """Renumber witness vertices so vertex v realizes instance line v."""
    slots = defaultdict(list)
    for idx, pair in reversed(list(enumerate(raw, 1))):
        slots[pair].append(idx)
    new_id = {}
    for v, pair in enumerate(real.degrees, 1):
        new_id[v] = slots[pair].pop()
    arcs = tuple(sorted((new_id[u], new_id[v]) for u, v in real.arcs))
    order = tuple(new_id[v] for v in real.order)
    return Realization(real.n, arcs, tuple(raw), order)


# ---------------------------------------------------------------- solve


def _fpt_config(seq: DegreeSequence, args) -> FptConfig:
    return FptConfig.for_sequence(seq, args.prefix_cap, args.nonrep_cap, args.supertype_cap)


def _run_mode(seq: DegreeSequence, args, limit: Optional[int], path: list) -> Outcome:
    if args.mode in ("chain", "auto"):
        path.append("chain")
        out = solve_chain(seq, Budget(limit))
        if args.mode == "chain" or out.verdict is not Verdict.NOT_A_CHAIN:
            return out
    if args.mode in ("exact", "auto"):
        path.append("exact")
        try:
            return solve_exact(seq, Budget(limit), prune=not args.no_prune, threads=args.threads)
        except ResourceLimit:
            if args.mode == "exact":
                raise
    path.append("fpt")
    return solve_fpt(seq, _fpt_config(seq, args), Budget(limit))


def cmd_solve(args) -> int:
    raw = _load_instance(args.instance)
    limit = args.budget if args.budget is not None else _default_budget()
    t0 = time.perf_counter()
    path: list = []
    try:
        seq = normalize(raw)
    except InvalidSequence as exc:
        # a degree of n or more can never be realized by a simple digraph
        outcome = Outcome(Verdict.UNREALIZABLE, stats={"reason": str(exc)})
        path.append("screen")
    else:
        try:
            outcome = _run_mode(seq, args, limit, path)
        except ResourceLimit as exc:
            outcome = Outcome(Verdict.UNKNOWN, stats={"visits": exc.states, "reason": "budget"})
    millis = (time.perf_counter() - t0) * 1000.0
    verdict = outcome.verdict
    if verdict is Verdict.NOT_A_CHAIN:
        verdict = Verdict.UNKNOWN
    stats = dict(outcome.stats)
    stats.update(mode=path[-1], path=path, millis=round(millis, 3))
    witness = relabel(outcome.witness, raw) if outcome.witness is not None else None
    if witness is not None and args.witness:
        _write(args.witness, format_witness(witness))

    if args.format == "json":
        doc = {"verdict": verdict.value, "stats": _jsonable(stats)}
        if witness is not None:
            doc["witness"] = {"n": witness.n, "arcs": [list(a) for a in witness.arcs], "order": list(witness.order)}
            trace, _ = run_trace([raw[v - 1] for v in witness.order], zero(seq.delta))
            doc["trace"] = [list(p) for p in trace[1:]]
        print(json.dumps(doc, sort_keys=True))
    else:
        visits = stats.get("visits")
        extra = f", {visits} states" if visits is not None else ""
        if verdict is Verdict.UNKNOWN:
            print(f"UNKNOWN(budget) ({path[-1]}, {millis:.1f} ms{extra})")
        else:
            print(f"{verdict.value} ({path[-1]}, {millis:.1f} ms{extra})")
    return {Verdict.REALIZABLE: EXIT_OK, Verdict.UNREALIZABLE: EXIT_NO}.get(verdict, EXIT_UNKNOWN)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


# ---------------------------------------------------------------- trace


def cmd_trace(args) -> int:
    raw = _load_instance(args.instance)
    n = len(raw)
    order = args.order if args.order else list(range(1, n + 1))
    if sorted(order) != list(range(1, n + 1)):
        raise InputError(f"order must be a permutation of 1..{n}")
    delta = max((max(p) for p in raw), default=0)
    ordering = [raw[i - 1] for i in order]
    trace, fail = run_trace(ordering, zero(delta))
    rows = trace[1:]
    if args.format == "json":
        doc = {"trace": [list(p) for p in rows], "infeasible_at": fail}
        if fail is None:
            doc["feasible"] = not any(trace[-1])
        print(json.dumps(doc))
    else:
        for i, p in enumerate(rows, 1):
            print(f"{i}: ({','.join(map(str, p))}) value={omega(p)}")
        if fail is not None:
            a = ordering[fail - 1].in_deg
            print(f"infeasible at position {fail}: in_deg {a} > {trace[-1][0] if delta else 0}")
        elif any(trace[-1]):
            print(f"infeasible: {omega(trace[-1])} out-arcs left unmatched")
    if fail is not None or any(trace[-1]):
        return EXIT_NO
    return EXIT_OK


# ---------------------------------------------------------------- reduction


def cmd_reduce(args) -> int:
    ri = reduce(_load_tp(args.partition))
    _write(args.output, format_instance(ri.sequence.pairs))
    return EXIT_OK


def cmd_witness(args) -> int:
    tp = _load_tp(args.partition)
    try:
        triples = parse_triples(_read(args.triples))
        real = witness_from_partition(tp, triples)
    except (ParseError, InvalidPartition) as exc:
        raise InputError(str(exc)) from None
    _write(args.output, format_witness(real))
    return EXIT_OK


def _infer_reduced(raw: Sequence[DegreePair]) -> ReducedInstance:
    """Rebuild the 3-Partition source of a reduced instance file."""
    # the first x-element is (0, 2mB); 2mB x-vertices plus 3m a-vertices
    sources = [p.out_deg for p in raw if p.in_deg == 0]
    if len(sources) != 1:
        raise InputError("not a reduced instance: expected exactly one source")
    two_mb = sources[0]
    m, rest = divmod(len(raw) - two_mb, 3)
    if rest or m < 1 or two_mb % (2 * m):
        raise InputError("not a reduced instance: sizes do not fit 2mB + 3m")
    big_b = two_mb // (2 * m)
    alphas = [p.in_deg for p in raw if p.in_deg + p.out_deg != two_mb]
    try:
        tp = ThreePartitionInstance(tuple(alphas), m, big_b)
    except InvalidInstance as exc:
        raise InputError(f"not a reduced instance: {exc}") from None
    ri = reduce(tp)
    if sorted(ri.sequence.pairs) != sorted(raw):
        raise InputError("not a reduced instance: degrees differ from the construction")
    return ri


def cmd_extract(args) -> int:
    text = _read(args.source)
    try:
        ri = reduce(parse_three_partition(text))
    except (ParseError, InvalidInstance):
        try:
            raw = parse_instance(text)
        except ParseError as exc:
            raise InputError(f"{args.source}: neither a 3-Partition nor an instance file ({exc})") from None
        ri = _infer_reduced(raw)
    real = _load_witness(args.witness)
    try:
        triples = extract_partition(ri, real)
    except MalformedRealization as exc:
        print(f"cannot extract: {exc}", file=sys.stderr)
        return EXIT_NO
    sys.stdout.write(format_triples(triples))
    return EXIT_OK


def cmd_verify(args) -> int:
    raw = _load_instance(args.instance)
    real = _load_witness(args.witness)
    seq = DegreeSequence(
        tuple(p for p in raw if p != (0, 0)), sum(1 for p in raw if p == (0, 0))
    )
    chk = verify(seq, real)
    if chk:
        print("Valid")
        return EXIT_OK
    print(f"Invalid({chk.reason.value}): {chk.detail}")
    return EXIT_NO


# ---------------------------------------------------------------- misc


def cmd_export_dot(args) -> int:
    _write(args.output, to_dot(_load_witness(args.witness)))
    return EXIT_OK


def cmd_gen(args) -> int:
    pairs = random_instance(args.n, args.delta, args.seed, args.shuffle_degrees)
    note = f"gen n={args.n} delta={args.delta} seed={args.seed}"
    if args.shuffle_degrees:
        note += " shuffled"
    _write(args.output, format_instance(pairs, [note]))
    return EXIT_OK


def cmd_oracle(args) -> int:
    raw = _load_instance(args.instance)
    try:
        seq = normalize(raw)
    except InvalidSequence:
        print(Verdict.UNREALIZABLE.value)
        return EXIT_NO
    try:
        verdict = brute_force_oracle(seq)
    except TooLarge as exc:
        raise UsageError(str(exc)) from None
    print(verdict.value)
    return EXIT_OK if verdict is Verdict.REALIZABLE else EXIT_NO


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dagreal", description="Degree sequence realization by DAGs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide realizability")
    p.add_argument("instance")
    p.add_argument("--mode", choices=("auto", "exact", "fpt", "chain"), default="auto")
    p.add_argument("--budget", type=_positive, help="state budget (default: $DAGREAL_BUDGET or 10^7)")
    p.add_argument("--witness", metavar="PATH", help="write a witness file when realizable")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--prefix-cap", type=_positive, default=12)
    p.add_argument("--nonrep-cap", type=_positive, default=16)
    p.add_argument("--supertype-cap", type=_positive, default=8)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--no-prune", action="store_true", help="disable opposed-order pruning")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trace", help="print the potential trace of an ordering")
    p.add_argument("instance")
    p.add_argument("order", nargs="*", type=int, help="1-based instance line indices")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("reduce", help="3-Partition file to instance file")
    p.add_argument("partition")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("witness", help="witness for a reduced instance from a partition")
    p.add_argument("partition")
    p.add_argument("triples")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("extract", help="recover triples from a witness of a reduced instance")
    p.add_argument("source", help="3-Partition file or reduced instance file")
    p.add_argument("witness")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="check a witness against an instance")
    p.add_argument("instance")
    p.add_argument("witness")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="witness file to DOT")
    p.add_argument("witness")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("gen", help="random realizable instance")
    p.add_argument("n", type=int)
    p.add_argument("delta", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shuffle-degrees", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force verdict (n <= 9)")
    p.add_argument("instance")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dagreal: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"dagreal: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
