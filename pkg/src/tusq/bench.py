"""Benchmark runs over a grid of targets, thresholds and algorithms."""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .formats import PathArg, parse_target
from .errors import ParseError
from .miner import MiningConfig, mine, parse_xi
from .model import Pattern, QDatabase
from .reference import husutq_mine

ALGORITHMS = {"tusq": mine, "husutq": husutq_mine}


@dataclass(frozen=True)
class BenchRow:
    dataset: str
    target_id: str
    xi: str
    algorithm: str
    runtime_ms: float
    candidates: int
    pruned_width: int
    pruned_depth: int
    num_queries: int
    u_dt: int
    peak_memory_kb: int


@dataclass
class BenchReport:
    rows: list[BenchRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f.name for f in fields(BenchRow)])
        for r in self.rows:
            w.writerow([f"{v:.3f}" if isinstance(v, float) else v for v in astuple(r)])
        return buf.getvalue()


def read_targets(path: PathArg, labels=None) -> list[tuple[str, Pattern]]:
    """One target per line, optionally prefixed by ``name:``; unnamed
    targets are called ``T1``, ``T2``, ... in file order."""
    out = []
    for no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, spec = line.partition(":")
        if not sep:
            name, spec = f"T{len(out) + 1}", line
        try:
            out.append((name.strip(), parse_target(spec, labels)))
        except ParseError as exc:
            raise ParseError(str(exc), no, str(path)) from None
    if not out:
        raise ParseError("no targets in file", path=str(path))
    return out


def run_bench(
    db: QDatabase,
    dataset: str,
    targets: Sequence[tuple[str, Pattern]],
    xis: Sequence[str],
    algorithms: Sequence[str] = ("tusq", "husutq"),
    repeat: int = 1,
    disable_sru: bool = False,
    disable_tdu: bool = False,
) -> BenchReport:
    """Runs every combination sequentially; ``runtime_ms`` is the best of
    ``repeat`` runs."""
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    rows = []
    for tid, target in targets:
        for xi in xis:
            parse_xi(xi)
            for algo in algorithms:
                cfg = MiningConfig(xi, disable_sru=disable_sru, disable_tdu=disable_tdu)
                best = None
                for _ in range(max(repeat, 1)):
                    _, stats = ALGORITHMS[algo](db, target, cfg)
                    if best is None or stats.elapsed_s < best.elapsed_s:
                        best = stats
                rows.append(
                    BenchRow(
                        dataset, tid, xi, algo, best.elapsed_s * 1000.0, best.candidates,
                        best.pruned_width, best.pruned_depth, best.num_queries, best.u_dt, best.peak_memory_kb,
                    )
                )
    return BenchReport(rows)
