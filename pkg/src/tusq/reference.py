"""Verification implementations: an exhaustive oracle and the HUS-UTQ baseline.

The oracle enumerates canonical patterns directly and computes utilities by
listing instances, sharing no code with the chain machinery beyond the data
types. The baseline runs the same search with an empty target (every
extension position is promising, so SRU and TDU degenerate into the
target-free PEU and RSU bounds) and keeps the target-containing results.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .chains import ChainSpace
from .matching import contains, find_instances, instance_utility, is_subsequence, rest_sequence
from .miner import MiningConfig, MiningStats, ResultSet, Threshold, _peak_memory_kb, dpp_filter, parse_xi, run_search
from .model import Pattern, QDatabase, QSequence, UtilityTable, database_utility


@dataclass(frozen=True)
class OracleConfig:
    max_pattern_length: int

    def __post_init__(self) -> None:
        if self.max_pattern_length < 1:
            raise ValueError("max_pattern_length must be positive")


def sequence_utility(s: Pattern, seq: QSequence, utilities: UtilityTable) -> int:
    """Max instance utility of ``s`` in ``seq`` (0 when absent), by enumeration."""
    return max((instance_utility(s, p, seq, utilities) for p in find_instances(s, seq)), default=0)


def utility_in(s: Pattern, db: QDatabase) -> int:
    return sum(sequence_utility(s, seq, db.utilities) for seq in db.sequences)


def dp_sequence_utility(s: Pattern, seq: QSequence, utilities: UtilityTable) -> int:
    """Same value as :func:`sequence_utility`, by a left-to-right recurrence.

    ``best[j]`` is the best utility of the current pattern prefix with its
    last itemset matched at itemset ``j``.
    """
    neg = None
    prev: list[int | None] = [0] * (len(seq) + 1)  # empty prefix ends "before" every itemset
    for k, x in enumerate(s.itemsets):
        cur: list[int | None] = [neg] * (len(seq) + 1)
        run: int | None = neg
        for j in range(1, len(seq) + 1):
            before = prev[j - 1] if k else 0
            if before is not None and (run is None or before > run):
                run = before
            X = seq.itemset(j)
            if run is not None and all(i in X for i in x):
                cur[j] = run + sum(X.quantity_of(i) * utilities[i] for i in x)
        prev = cur
    found = [v for v in prev[1:] if v is not None]
    return max(found, default=0)


def _enumerate(filtered: QDatabase, cap: int):
    """Yield ``(pattern, support)`` for every canonical pattern of at most
    ``cap`` items contained in some sequence of ``filtered``."""
    seqs = filtered.sequences
    alphabet = filtered.items()

    def walk(p: Pattern, support: list[int]):
        yield p, support
        if len(p) >= cap:
            return
        children = [p.i_extend(i) for i in alphabet if i > p.itemsets[-1][-1]]
        children += [p.s_extend(i) for i in alphabet]
        for child in children:
            sub = [k for k in support if contains(child, seqs[k])]
            if sub:
                yield from walk(child, sub)

    everything = list(range(len(seqs)))
    for i in alphabet:
        p = Pattern(((i,),))
        support = [k for k in everything if contains(p, seqs[k])]
        if support:
            yield from walk(p, support)


def oracle_utilities(db: QDatabase, target: Pattern, cfg: OracleConfig) -> tuple[dict[Pattern, int], int]:
    """Utility of every target-containing pattern up to the cap, and ``u(D_T)``."""
    filtered = dpp_filter(db, target)
    out: dict[Pattern, int] = {}
    for p, support in _enumerate(filtered, cfg.max_pattern_length):
        if is_subsequence(target, p):
            out[p] = sum(sequence_utility(p, filtered.sequences[k], filtered.utilities) for k in support)
    return out, database_utility(filtered)


def select(utilities: dict[Pattern, int], u_dt: int, xi) -> ResultSet:
    thr = Threshold(parse_xi(xi), u_dt)
    return ResultSet.from_pairs((p, u) for p, u in utilities.items() if thr.met(u))


def oracle_mine(db: QDatabase, target: Pattern, xi, cfg: OracleConfig) -> ResultSet:
    utilities, u_dt = oracle_utilities(db, target, cfg)
    return select(utilities, u_dt, xi)


def literal_promising(seq: QSequence, s: Pattern, ep: int, suffix: Pattern) -> bool:
    """Whether ``suffix`` is contained in the materialised rest sequence of
    ``s`` at ``ep``."""
    if not suffix.itemsets:
        return True
    rest = rest_sequence(seq, s, ep)
    if not rest:
        return False
    return contains(suffix, QSequence(seq.sid, rest))


def husutq_mine(db: QDatabase, target: Pattern, cfg: MiningConfig | str | float) -> tuple[ResultSet, MiningStats]:
    """Target-free high-utility search over ``D_T`` followed by a containment filter."""
    if not isinstance(cfg, MiningConfig):
        cfg = MiningConfig(xi=cfg)
    start = time.perf_counter()
    filtered = dpp_filter(db, target)
    space = ChainSpace(filtered, Pattern(), cfg.backend)
    threshold = Threshold(cfg.xi, database_utility(filtered))
    found, counters = run_search(space, threshold, cfg)
    kept = [(p, u) for p, u in found if is_subsequence(target, p)]
    results = ResultSet.from_pairs(kept)
    stats = MiningStats(
        algorithm="husutq",
        candidates=counters.candidates,
        pruned_width=counters.pruned_width,
        pruned_depth=counters.pruned_depth,
        u_dt=threshold.u_dt,
        threshold_abs=threshold.value,
        num_queries=len(results),
        filtered_out=len(found) - len(kept),
        elapsed_s=time.perf_counter() - start,
        peak_memory_kb=_peak_memory_kb(),
        backend=space.kernels.NAME,
        threads=cfg.resolved_threads(),
    )
    return results, stats
