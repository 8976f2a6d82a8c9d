"""Command-line interface: ``tusq mine|baseline|oracle|bench|gen|verify``."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from . import formats
from .bench import read_targets, run_bench
from .datasets import SYN40K, SyntheticSpec, generate_synthetic
from .errors import ParseError, TargetAbsentError, TusqError
from .miner import MiningConfig, ResultSet, mine, parse_xi
from .reference import OracleConfig, husutq_mine, oracle_mine

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_TARGET_ABSENT = 3
EXIT_MISMATCH = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _xi(text: str) -> str:
    try:
        parse_xi(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        n = 0
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--db", required=True, help="sequence data file")
    p.add_argument("--utils", required=True, help="item profit file")
    p.add_argument("--labels", help="optional item label file")


def _add_query(p: argparse.ArgumentParser, with_pruning: bool = True) -> None:
    _add_input(p)
    p.add_argument("--target", required=True, help='target, e.g. "a|c e|c" or "1 -1 3 5 -1 3 -2"')
    p.add_argument("--xi", required=True, type=_xi, help="threshold ratio in [0, 1]")
    p.add_argument("--out", help="result file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--stats", help="write mining statistics as JSON")
    if with_pruning:
        p.add_argument("--no-sru", action="store_true", help="disable depth pruning")
        p.add_argument("--no-tdu", action="store_true", help="disable width pruning")
        p.add_argument("--max-len", type=_positive, help="cap on pattern length in items")
        p.add_argument("--backend", choices=("numba", "numpy"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tusq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_query(sub.add_parser("mine", help="mine UTQs"))
    _add_query(sub.add_parser("baseline", help="HUS-UTQ baseline"))
    p = sub.add_parser("oracle", help="exhaustive oracle")
    _add_query(p, with_pruning=False)
    p.add_argument("--max-len", type=_positive, required=True)

    p = sub.add_parser("bench", help="benchmark report as CSV on stdout")
    _add_input(p)
    p.add_argument("--targets", required=True, help="file with one target per line")
    p.add_argument("--xi-list", required=True)
    p.add_argument("--algos", default="tusq,husutq")
    p.add_argument("--repeat", type=_positive, default=1)
    p.add_argument("--no-sru", action="store_true")
    p.add_argument("--no-tdu", action="store_true")

    p = sub.add_parser("gen", help="generate a synthetic database")
    p.add_argument("--preset", choices=("syn40k",))
    p.add_argument("--num-sequences", type=_positive)
    p.add_argument("--alphabet", type=_positive)
    p.add_argument("--avg-itemsets", type=float)
    p.add_argument("--avg-items", type=float)
    p.add_argument("--max-itemsets", type=_positive)
    p.add_argument("--max-qty", type=_positive, default=5)
    p.add_argument("--max-profit", type=_positive, default=10)
    p.add_argument("--skew", type=float, default=0.0, help="item popularity skew, 0 for uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-db", required=True)
    p.add_argument("--out-utils", required=True)

    p = sub.add_parser("verify", help="compare mine against the oracle")
    _add_input(p)
    p.add_argument("--target", required=True)
    p.add_argument("--xi", required=True, type=_xi)
    p.add_argument("--max-len", type=_positive, required=True)
    return parser


def _load(args):
    labels = formats.parse_labels(args.labels) if args.labels else None
    db = formats.parse_database(args.db, args.utils)
    return db, labels


def _emit(args, results: ResultSet, labels, stats=None) -> None:
    text = formats.results_to_json(results, labels) if args.format == "json" else formats.results_to_csv(results, labels)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if stats is not None and args.stats:
        Path(args.stats).write_text(formats.stats_to_json(stats))


def _cmd_query(args) -> int:
    db, labels = _load(args)
    target = formats.parse_target(args.target, labels)
    if args.command == "oracle":
        _emit(args, oracle_mine(db, target, args.xi, OracleConfig(args.max_len)), labels)
        return EXIT_OK
    cfg = MiningConfig(
        args.xi,
        max_pattern_length=args.max_len,
        disable_sru=args.no_sru,
        disable_tdu=args.no_tdu,
        backend=args.backend,
    )
    run = mine if args.command == "mine" else husutq_mine
    results, stats = run(db, target, cfg)
    _emit(args, results, labels, stats)
    return EXIT_OK


def _cmd_bench(args) -> int:
    db, labels = _load(args)
    targets = read_targets(args.targets, labels)
    xis = [x.strip() for x in args.xi_list.split(",") if x.strip()]
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    if not xis or not algos:
        raise UsageError("--xi-list and --algos must be non-empty")
    for x in xis:
        try:
            parse_xi(x)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    unknown = set(algos) - {"tusq", "husutq"}
    if unknown:
        raise UsageError(f"unknown algorithms: {', '.join(sorted(unknown))}")
    report = run_bench(db, Path(args.db).name, targets, xis, algos, args.repeat, args.no_sru, args.no_tdu)
    sys.stdout.write(report.to_csv())
    return EXIT_OK


def _cmd_gen(args) -> int:
    base = SYN40K if args.preset == "syn40k" else None
    if base is None:
        missing = [n for n in ("num_sequences", "alphabet", "avg_itemsets", "avg_items") if getattr(args, n) is None]
        if missing:
            raise UsageError("gen needs --preset or " + ", ".join("--" + m.replace("_", "-") for m in missing))

    def pick(value, name):
        return value if value is not None else getattr(base, name)

    try:
        spec = SyntheticSpec(
            pick(args.num_sequences, "num_sequences"),
            pick(args.alphabet, "alphabet_size"),
            pick(args.avg_itemsets, "avg_itemsets"),
            pick(args.avg_items, "avg_items_per_itemset"),
            max_qty=args.max_qty,
            max_profit=args.max_profit,
            max_itemsets=args.max_itemsets if args.max_itemsets is not None or base is None else base.max_itemsets,
            item_skew=args.skew,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    formats.write_database(generate_synthetic(spec), args.out_db, args.out_utils)
    return EXIT_OK


def _cmd_verify(args) -> int:
    db, labels = _load(args)
    target = formats.parse_target(args.target, labels)
    got, _ = mine(db, target, MiningConfig(args.xi, max_pattern_length=args.max_len))
    want = oracle_mine(db, target, args.xi, OracleConfig(args.max_len))
    if got == want:
        print(f"ok: {len(got)} patterns agree")
        return EXIT_OK
    g, w = got.as_dict(), want.as_dict()
    for p in sorted(set(g) | set(w)):
        if g.get(p) != w.get(p):
            print(f"mismatch {p.format(labels)}: mine={g.get(p)} oracle={w.get(p)}")
    return EXIT_MISMATCH


COMMANDS = {
    "mine": _cmd_query,
    "baseline": _cmd_query,
    "oracle": _cmd_query,
    "bench": _cmd_bench,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tusq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TargetAbsentError as exc:
        print(f"tusq: {exc}", file=sys.stderr)
        return EXIT_TARGET_ABSENT
    except (ParseError, OSError) as exc:
        print(f"tusq: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TusqError as exc:
        print(f"tusq: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
