"""Pattern containment, instances, target prefixes and the last-instance table.

Everything here works on the plain object model and is written for clarity;
the miner only calls :func:`contains`, :func:`longest_prefix_state` and
:func:`build_li_table`, while the exhaustive routines (:func:`find_instances`
and friends) exist for the reference oracle and the test-suite.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .errors import TusqError
from .model import Pattern, QDatabase, QItemset, QSequence, UtilityTable, itemset_utility_at

InstancePosition = tuple[int, ...]


def itemset_matches(x: Iterable[int], X: QItemset) -> bool:
    """True iff the plain itemset ``x`` holds exactly the items of ``X``."""
    return tuple(sorted(x)) == X.item_ids


def itemset_subset(x: Iterable[int], X: QItemset) -> bool:
    ids = set(X.item_ids)
    return all(i in ids for i in x)


def is_subsequence(t: Pattern | tuple, s: Pattern | tuple) -> bool:
    """Plain-sequence subsequence test: every itemset of ``t`` is a subset of a
    later and later itemset of ``s``."""
    t_sets = t.itemsets if isinstance(t, Pattern) else t
    s_sets = s.itemsets if isinstance(s, Pattern) else s
    j = 0
    for x in t_sets:
        xs = set(x)
        while j < len(s_sets) and not xs <= set(s_sets[j]):
            j += 1
        if j == len(s_sets):
            return False
        j += 1
    return True


def contains(s: Pattern, seq: QSequence) -> bool:
    """``s`` has at least one instance in ``seq`` (greedy earliest matching)."""
    return is_subsequence(s.itemsets, seq.plain())


def _candidate_positions(s: Pattern, seq: QSequence) -> list[list[int]]:
    plain = [set(x) for x in seq.plain()]
    return [[j + 1 for j, X in enumerate(plain) if set(x) <= X] for x in s.itemsets]


def find_instances(s: Pattern, seq: QSequence) -> set[InstancePosition]:
    """Every instance position of ``s`` in ``seq``. Exponential; oracle use only."""
    if not s.itemsets:
        return {()}
    cands = _candidate_positions(s, seq)

    @lru_cache(maxsize=None)
    def tails(k: int, after: int) -> tuple[InstancePosition, ...]:
        if k == len(cands):
            return ((),)
        out: list[InstancePosition] = []
        for j in cands[k]:
            if j > after:
                out.extend((j,) + rest for rest in tails(k + 1, j))
        return tuple(out)

    return set(tails(0, 0))


def instance_utility(s: Pattern, p: InstancePosition, seq: QSequence, utilities: UtilityTable) -> int:
    return sum(itemset_utility_at(x, j, seq, utilities) for x, j in zip(s.itemsets, p))


def extension_positions(s: Pattern, seq: QSequence) -> list[int]:
    """Distinct itemset indices where instances of ``s`` end; the first is the pivot."""
    return sorted({p[-1] for p in find_instances(s, seq) if p})


def last_instance(s: Pattern, seq: QSequence) -> InstancePosition | None:
    """Coordinate-wise maximal instance, found by right-to-left greedy matching."""
    plain = [set(x) for x in seq.plain()]
    pos: list[int] = []
    j = len(plain) - 1
    for x in reversed(s.itemsets):
        xs = set(x)
        while j >= 0 and not xs <= plain[j]:
            j -= 1
        if j < 0:
            return None
        pos.append(j + 1)
        j -= 1
    return tuple(reversed(pos))


def rest_sequence(seq: QSequence, s: Pattern, ep: int) -> tuple[QItemset, ...]:
    """The part of ``seq`` strictly after the extension item of ``s`` at ``ep``.

    The first itemset keeps only the items larger than the extension item and
    is dropped when nothing is left of it.
    """
    ext = s.last_item
    head = seq.itemset(ep)
    rest = tuple(qi for qi in head.items if ext is None or qi.item > ext)
    tail = seq.itemsets[ep:]
    return ((QItemset(rest),) if rest else ()) + tail


@dataclass(frozen=True)
class PrefixState:
    """Where the longest target prefix contained by a pattern stops.

    ``prel`` counts items. ``suffix_start_itemset`` is the 0-based index of
    the target itemset in which the suffix begins (``None`` once the whole
    target is covered) and ``suffix_partial`` holds the items of that itemset
    that are still unmatched. ``matched`` is how many leading items of that
    itemset the pattern's last itemset already covers (0 when none).
    """

    prel: int
    suffix_start_itemset: int | None = None
    suffix_partial: tuple[int, ...] = ()
    matched: int = 0

    @property
    def complete(self) -> bool:
        return self.suffix_start_itemset is None

    @property
    def is_partial(self) -> bool:
        return self.matched > 0


def longest_prefix_state(target: Pattern, s: Pattern) -> PrefixState:
    """Longest prefix of ``target`` contained by ``s``.

    Whole target itemsets are matched greedily left to right. After that the
    next target itemset may be matched partially, but only inside the final
    itemset of ``s``, only by its leading items, and only when every item left
    over is larger than every item of that final itemset (so it can still be
    reached by I-extensions).
    """
    if not target.itemsets:
        return PrefixState(0)
    if not s.itemsets:
        return PrefixState(0, 0, target.itemsets[0])
    k, prel = greedy_frontier(target, s.itemsets[:-1])
    return state_at_frontier(target, k, prel, s.itemsets[-1])[0]


def greedy_frontier(target: Pattern, itemsets: tuple[tuple[int, ...], ...], k: int = 0, prel: int = 0) -> tuple[int, int]:
    """Greedily match whole target itemsets from index ``k`` into ``itemsets``;
    returns the new count of matched itemsets and matched items."""
    T = target.itemsets
    for x in itemsets:
        if k == len(T):
            break
        if set(T[k]) <= set(x):
            prel += len(T[k])
            k += 1
    return k, prel


def state_at_frontier(target: Pattern, k: int, prel: int, last: tuple[int, ...]) -> tuple[PrefixState, int, int]:
    """Prefix state of a pattern whose itemsets before ``last`` fully match
    ``k`` target itemsets (``prel`` items).

    Also returns the frontier after ``last``, which is what an S-extension of
    the pattern starts from.
    """
    T = target.itemsets
    n = len(T)
    if k < n and set(T[k]) <= set(last):
        k_full, prel_full = k + 1, prel + len(T[k])
        if k_full == n:
            return PrefixState(prel_full), k_full, prel_full
        return PrefixState(prel_full, k_full, T[k_full]), k_full, prel_full
    if k == n:
        return PrefixState(prel), k, prel
    y = T[k]
    top = last[-1]
    lead = [i for i in y if i <= top]
    if lead and set(lead) <= set(last):
        return PrefixState(prel + len(lead), k, y[len(lead) :], len(lead)), k, prel
    return PrefixState(prel, k, y), k, prel


def suffix_pattern(target: Pattern, state: PrefixState) -> Pattern:
    """Suf(T, s) as a plain pattern (its first itemset may be a residual)."""
    if state.suffix_start_itemset is None:
        return Pattern()
    i = state.suffix_start_itemset
    return Pattern((state.suffix_partial,) + target.itemsets[i + 1 :])


def prefix_pattern(target: Pattern, state: PrefixState) -> Pattern:
    if state.suffix_start_itemset is None:
        return target
    i = state.suffix_start_itemset
    done = target.itemsets[:i]
    lead = target.itemsets[i][: state.matched]
    return Pattern(done + ((lead,) if lead else ()))


class LIRow(NamedTuple):
    """Last-instance positions of the target in one sequence.

    ``last[i]`` is the position of target itemset ``i`` in the last instance.
    ``residual[(i, j)]`` is the latest position holding the trailing items
    ``T[i][j:]`` such that the rest of the target still fits strictly after it.
    """

    last: tuple[int, ...]
    residual: Mapping[tuple[int, int], int]


@dataclass(frozen=True)
class LITable:
    target: Pattern
    rows: Mapping[int, tuple[int, ...]]
    residual_rows: Mapping[int, Mapping[tuple[int, int], int]] = field(default_factory=dict)

    def __getitem__(self, sid: int) -> tuple[int, ...]:
        return self.rows[sid]

    def __contains__(self, sid: object) -> bool:
        return sid in self.rows

    def __len__(self) -> int:
        return len(self.rows)

    def row(self, sid: int) -> LIRow:
        return LIRow(self.rows[sid], self.residual_rows.get(sid, {}))

    def residual_keys(self) -> list[tuple[int, int]]:
        return [(i, j) for i, y in enumerate(self.target.itemsets) for j in range(1, len(y))]


def _residual_positions(target: Pattern, seq: QSequence, last: tuple[int, ...]) -> dict[tuple[int, int], int]:
    plain = [set(x) for x in seq.plain()]
    out: dict[tuple[int, int], int] = {}
    n = len(target.itemsets)
    for i, y in enumerate(target.itemsets):
        bound = last[i + 1] if i + 1 < n else len(plain) + 1
        for j in range(1, len(y)):
            tail = set(y[j:])
            q = bound - 1
            while q >= 1 and not tail <= plain[q - 1]:
                q -= 1
            out[(i, j)] = q
    return out


def build_li_table(target: Pattern, filtered: QDatabase | Iterable[QSequence]) -> LITable:
    rows: dict[int, tuple[int, ...]] = {}
    residual: dict[int, dict[tuple[int, int], int]] = {}
    for seq in filtered:
        pos = last_instance(target, seq)
        if pos is None:
            raise TusqError(f"redundant sequence not filtered: sid {seq.sid}")
        rows[seq.sid] = pos
        residual[seq.sid] = _residual_positions(target, seq, pos)
    return LITable(target, rows, residual)


def is_promising(ep: int, state: PrefixState, li_row: LIRow | tuple[int, ...], ext_item: int | None) -> bool:
    """Decide ``Suf(T, s) ⊑ S/(s, ep)`` from the last-instance row alone.

    The rest sequence starts after the extension item, so a suffix that begins
    with a whole target itemset placed exactly at ``ep`` needs that itemset to
    lie above the extension item. A residual suffix is looked up in its own
    column; its items already exceed the extension item.
    """
    i = state.suffix_start_itemset
    if i is None:
        return True
    if not isinstance(li_row, LIRow):
        li_row = LIRow(tuple(li_row), {})
    if state.matched:
        key = (i, state.matched)
        if key not in li_row.residual:
            raise ValueError(f"LI row lacks the residual column {key}")
        return li_row.residual[key] >= ep
    li = li_row.last[i]
    if li != ep:
        return li > ep
    return ext_item is None or state.suffix_partial[0] > ext_item
