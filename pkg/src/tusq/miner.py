"""Targeted high-utility sequence querying.

:func:`mine` filters the database down to the sequences containing the
target, seeds one chain per item and grows the lexicographic pattern tree.
Two bounds cut the tree: a child whose TDU is below the threshold is dropped
before it is visited (width), and a node whose SRU is below it is not
expanded (depth).
"""

from __future__ import annotations

import os
import resource
import time
from collections.abc import Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .chains import ChainSpace, Extension, TargetedChain
from .errors import TargetAbsentError
from .matching import contains
from .model import Pattern, QDatabase, database_utility

THREADS_ENV = "TUSQ_THREADS"
MAX_XI_DIGITS = 6


def parse_xi(value: str | int | float | Decimal | Fraction) -> Fraction:
    """Read a threshold ratio as an exact fraction.

    Decimal input may carry at most six fractional digits; floats are read
    through their shortest ``repr``.
    """
    if isinstance(value, Fraction):
        xi = value
    else:
        try:
            dec = Decimal(repr(value) if isinstance(value, float) else str(value).strip())
        except InvalidOperation:
            raise ValueError(f"threshold {value!r} is not a decimal number") from None
        if not dec.is_finite():
            raise ValueError(f"threshold {value!r} is not finite")
        dec = dec.normalize()
        exp = dec.as_tuple().exponent
        if isinstance(exp, int) and -exp > MAX_XI_DIGITS:
            raise ValueError(f"threshold {value!r} has more than {MAX_XI_DIGITS} fractional digits")
        xi = Fraction(dec)
    if not 0 <= xi <= 1:
        raise ValueError(f"threshold {value!r} must lie in [0, 1]")
    return xi


@dataclass(frozen=True)
class Threshold:
    """``xi * u(D_T)`` kept as a rational so ``u >= threshold`` is exact."""

    xi: Fraction
    u_dt: int

    @property
    def value(self) -> Fraction:
        return self.xi * self.u_dt

    def met(self, utility: int) -> bool:
        return utility * self.xi.denominator >= self.xi.numerator * self.u_dt


@dataclass(frozen=True)
class MiningConfig:
    xi: Fraction
    max_pattern_length: int | None = None
    disable_sru: bool = False
    disable_tdu: bool = False
    threads: int | None = None
    backend: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "xi", parse_xi(self.xi))
        if self.max_pattern_length is not None and self.max_pattern_length < 1:
            raise ValueError("max_pattern_length must be positive")
        if self.threads is not None and self.threads < 1:
            raise ValueError("threads must be positive")

    def resolved_threads(self) -> int:
        if self.threads is not None:
            return self.threads
        raw = os.environ.get(THREADS_ENV, "1").strip() or "1"
        n = int(raw)
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be a positive integer")
        return n


@dataclass(frozen=True)
class ResultSet:
    """UTQs as ``(pattern, utility)`` pairs in lexicographic pattern order."""

    entries: tuple[tuple[Pattern, int], ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Pattern, int]]) -> ResultSet:
        merged: dict[Pattern, int] = {}
        for p, u in pairs:
            if p in merged and merged[p] != u:
                raise ValueError(f"conflicting utilities for {p}")
            merged[p] = int(u)
        return cls(tuple(sorted(merged.items())))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[Pattern, int]]:
        return iter(self.entries)

    def __contains__(self, pattern: object) -> bool:
        return any(p == pattern for p, _ in self.entries)

    def patterns(self) -> set[Pattern]:
        return {p for p, _ in self.entries}

    def as_dict(self) -> dict[Pattern, int]:
        return dict(self.entries)

    def utility_of(self, pattern: Pattern) -> int:
        return self.as_dict()[pattern]


@dataclass
class MiningStats:
    algorithm: str = "tusq"
    candidates: int = 0
    pruned_width: int = 0
    pruned_depth: int = 0
    u_dt: int = 0
    threshold_abs: Fraction = Fraction(0)
    num_queries: int = 0
    filtered_out: int = 0
    elapsed_s: float = 0.0
    peak_memory_kb: int = 0
    backend: str = ""
    threads: int = 1

    def counters(self) -> tuple[int, int, int, int]:
        return self.candidates, self.pruned_width, self.pruned_depth, self.num_queries

    def to_dict(self) -> dict:
        d = asdict(self)
        t = self.threshold_abs
        d["threshold_abs"] = f"{t.numerator}/{t.denominator}" if t.denominator != 1 else str(t.numerator)
        d["threshold_abs_float"] = float(t)
        d["peak_memory_informational"] = True
        return d


@dataclass
class _Counters:
    candidates: int = 0
    pruned_width: int = 0
    pruned_depth: int = 0

    def add(self, other: _Counters) -> None:
        self.candidates += other.candidates
        self.pruned_width += other.pruned_width
        self.pruned_depth += other.pruned_depth


@dataclass
class _Search:
    space: ChainSpace
    threshold: Threshold
    cfg: MiningConfig
    out: list[tuple[Pattern, int]] = field(default_factory=list)
    counters: _Counters = field(default_factory=_Counters)

    def visit(self, chain: TargetedChain) -> None:
        if chain.state.complete and self.threshold.met(chain.utility):
            self.out.append((chain.pattern, chain.utility))
        cap = self.cfg.max_pattern_length
        if cap is not None and len(chain.pattern) >= cap:
            return
        if not self.cfg.disable_sru and not self.threshold.met(chain.sru):
            self.counters.pruned_depth += 1
            return
        self.grow(chain)

    def grow(self, chain: TargetedChain) -> None:
        space = self.space
        ilist, slist = space.extension_items(chain)
        promising: list[TargetedChain] = []
        for kind, items in ((Extension.I, ilist), (Extension.S, slist)):
            for item in items.tolist():
                child = space.project(chain, item, kind)
                self.counters.candidates += 1
                if child is None:
                    continue
                if not self.cfg.disable_tdu and not self.threshold.met(child.tdu):
                    self.counters.pruned_width += 1
                    continue
                promising.append(child)
        for child in promising:
            self.visit(child)


def dpp_filter(db: QDatabase, target: Pattern) -> QDatabase:
    """Keep only the sequences that contain ``target``, in input order."""
    kept = [s for s in db.sequences if contains(target, s)]
    if not kept:
        raise TargetAbsentError(f"target not present in database: {target}")
    return db.subset(kept)


def pattern_growth(
    space: ChainSpace,
    chain: TargetedChain,
    threshold: Threshold,
    cfg: MiningConfig,
    out: list[tuple[Pattern, int]],
    counters: _Counters | None = None,
) -> _Counters:
    """Expand ``chain`` recursively, appending every UTQ found below it to ``out``."""
    search = _Search(space, threshold, cfg, out, counters or _Counters())
    search.grow(chain)
    return search.counters


def run_search(space: ChainSpace, threshold: Threshold, cfg: MiningConfig) -> tuple[list[tuple[Pattern, int]], _Counters]:
    """Mine every 1-sequence subtree of ``space``; sibling subtrees may run on
    worker threads, with results and counters merged in item order."""
    firsts = space.initial_chains()

    def subtree(item: int) -> tuple[list[tuple[Pattern, int]], _Counters]:
        search = _Search(space, threshold, cfg)
        search.counters.candidates += 1
        chain = firsts[item]
        if chain:
            search.visit(chain)
        return search.out, search.counters

    items = sorted(firsts)
    threads = cfg.resolved_threads()
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(subtree, items))
    else:
        parts = [subtree(i) for i in items]
    out: list[tuple[Pattern, int]] = []
    total = _Counters()
    for found, counters in parts:
        out.extend(found)
        total.add(counters)
    return out, total


def _peak_memory_kb() -> int:
    try:
        return int(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss)
    except (AttributeError, ValueError, OSError):  # pragma: no cover
        return 0


def mine(db: QDatabase, target: Pattern, cfg: MiningConfig | str | float | Fraction) -> tuple[ResultSet, MiningStats]:
    """Return every pattern containing ``target`` whose utility reaches ``xi * u(D_T)``."""
    if not isinstance(cfg, MiningConfig):
        cfg = MiningConfig(xi=cfg)
    start = time.perf_counter()
    filtered = dpp_filter(db, target)
    space = ChainSpace(filtered, target, cfg.backend)
    threshold = Threshold(cfg.xi, database_utility(filtered))
    found, counters = run_search(space, threshold, cfg)
    results = ResultSet.from_pairs(found)
    stats = MiningStats(
        algorithm="tusq",
        candidates=counters.candidates,
        pruned_width=counters.pruned_width,
        pruned_depth=counters.pruned_depth,
        u_dt=threshold.u_dt,
        threshold_abs=threshold.value,
        num_queries=len(results),
        elapsed_s=time.perf_counter() - start,
        peak_memory_kb=_peak_memory_kb(),
        backend=space.kernels.NAME,
        threads=cfg.resolved_threads(),
    )
    return results, stats
