"""Compare the numba and numpy kernel backends on identical mining runs.

Each backend mines the same queries; the best of ``--repeat`` wall times is
reported, and the result sets are checked to be equal. The numba column
excludes compilation (one warm-up query runs first; its time is printed
separately).

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --sequences 2000 --xi 0.2,0.1 --csv out.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from tusq import MiningConfig, Pattern, mine
from tusq.datasets import SyntheticSpec, generate_synthetic, running_example
from tusq.kernels import BACKENDS, numba_available


@dataclass
class Row:
    xi: str
    backend: str
    best_s: float
    candidates: int
    utqs: int


def best_time(db, target, xi: str, backend: str, repeat: int):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        res, stats = mine(db, target, MiningConfig(xi, backend=backend))
        best = min(best, time.perf_counter() - t)
    return best, res, stats


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sequences", type=int, default=500)
    ap.add_argument("--alphabet", type=int, default=12)
    ap.add_argument("--avg-itemsets", type=float, default=3.0)
    ap.add_argument("--avg-items", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=9)
    ap.add_argument("--target", default="1|2", help="target in a|b c form over item ids")
    ap.add_argument("--xi", default="0.2,0.1,0.08,0.06")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--csv", help="also write the rows to this file")
    args = ap.parse_args(argv)

    backends = [b for b in BACKENDS if b != "numba" or numba_available()]
    spec = SyntheticSpec(args.sequences, args.alphabet, args.avg_itemsets, args.avg_items, seed=args.seed)
    db = generate_synthetic(spec)
    target = Pattern.of(*([int(i) for i in x.split()] for x in args.target.split("|")))

    if "numba" in backends:
        ex = running_example()
        t = time.perf_counter()
        mine(ex.database, ex.target, MiningConfig("0.3", backend="numba"))
        print(f"numba warm-up (includes compilation or cache load): {time.perf_counter() - t:.2f}s")

    rows: list[Row] = []
    for xi in (x.strip() for x in args.xi.split(",") if x.strip()):
        seen = None
        for backend in backends:
            secs, res, stats = best_time(db, target, xi, backend, args.repeat)
            if seen is not None and res != seen:
                print(f"backends disagree at xi={xi}", file=sys.stderr)
                return 1
            seen = res
            rows.append(Row(xi, backend, secs, stats.candidates, len(res)))

    print(f"{'xi':>6} {'backend':>8} {'best_s':>9} {'candidates':>11} {'utqs':>6} {'us/cand':>8}")
    for r in rows:
        per = 1e6 * r.best_s / max(r.candidates, 1)
        print(f"{r.xi:>6} {r.backend:>8} {r.best_s:>9.3f} {r.candidates:>11} {r.utqs:>6} {per:>8.1f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["xi", "backend", "best_s", "candidates", "utqs"])
            w.writerows([r.xi, r.backend, f"{r.best_s:.6f}", r.candidates, r.utqs] for r in rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
