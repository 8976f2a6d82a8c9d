"""Q-matrices, targeted chains and the projection operator.

A filtered database is packed into flat ``int64`` arrays with one entry per
q-item ("cell"), ordered by sequence, itemset and item. A targeted chain then
needs only two parallel arrays: the cell of the pattern's extension item at
every retained extension position, and the best instance utility ending
there. Head-table fields (SRU, max utility) are derived per sequence by the
kernels in :mod:`tusq.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from types import ModuleType

import numpy as np

from .errors import ExtensionError
from .kernels import get_backend
from .matching import LITable, PrefixState, build_li_table, longest_prefix_state, state_at_frontier
from .model import Pattern, QDatabase, QSequence, UtilityTable


class Extension(Enum):
    I = "I"
    S = "S"


@dataclass(frozen=True)
class QMatrix:
    """Utility and rest-utility matrices of one q-sequence.

    Rows follow ``items`` (ascending), columns the itemsets (column ``j-1``
    for itemset ``j``). Absent cells hold 0 in both matrices.
    """

    items: tuple[int, ...]
    utility: np.ndarray
    rest: np.ndarray
    members: tuple[tuple[int, ...], ...]

    def u(self, item: int, j: int) -> int:
        return int(self.utility[self.items.index(item), j - 1])

    def ru(self, item: int, j: int) -> int:
        return int(self.rest[self.items.index(item), j - 1])


def build_qmatrix(seq: QSequence, utilities: UtilityTable) -> QMatrix:
    items = tuple(sorted({qi.item for x in seq.itemsets for qi in x.items}))
    row = {i: r for r, i in enumerate(items)}
    util = np.zeros((len(items), len(seq)), dtype=np.int64)
    rest = np.zeros_like(util)
    remaining = sum(qi.quantity * utilities[qi.item] for x in seq.itemsets for qi in x.items)
    for j, x in enumerate(seq.itemsets):
        for qi in x.items:
            u = qi.quantity * utilities[qi.item]
            remaining -= u
            util[row[qi.item], j] = u
            rest[row[qi.item], j] = remaining
    return QMatrix(items, util, rest, tuple(x.item_ids for x in seq.itemsets))


class PackedDatabase:
    """Flat cell arrays of a q-sequence database (all ``int64``).

    ``cell_pos`` is the 1-based itemset position inside its sequence and
    ``cell_gid`` a global itemset number; ``cell_key = gid * n_items + item``
    is sorted, which turns "is item i in itemset g" into a binary search.
    """

    def __init__(self, db: QDatabase):
        items: list[int] = []
        utils: list[int] = []
        gids: list[int] = []
        seqs: list[int] = []
        poss: list[int] = []
        seq_start: list[int] = []
        gid_end: list[int] = []
        seq_util: list[int] = []
        prof = db.utilities
        gid = 0
        for si, seq in enumerate(db.sequences):
            seq_start.append(len(items))
            total = 0
            for j, x in enumerate(seq.itemsets, start=1):
                for qi in x.items:
                    u = qi.quantity * prof[qi.item]
                    items.append(qi.item)
                    utils.append(u)
                    gids.append(gid)
                    seqs.append(si)
                    poss.append(j)
                    total += u
                gid_end.append(len(items))
                gid += 1
            seq_util.append(total)
        self.sids = np.array([s.sid for s in db.sequences], dtype=np.int64)
        self.cell_item = np.array(items, dtype=np.int64)
        self.cell_util = np.array(utils, dtype=np.int64)
        self.cell_gid = np.array(gids, dtype=np.int64)
        self.cell_seq = np.array(seqs, dtype=np.int64)
        self.cell_pos = np.array(poss, dtype=np.int64)
        self.gid_end = np.array(gid_end, dtype=np.int64)
        self.seq_cell_start = np.array(seq_start, dtype=np.int64)
        self.seq_cell_end = np.append(self.seq_cell_start[1:], len(items)).astype(np.int64)
        self.seq_util = np.array(seq_util, dtype=np.int64)
        self.n_items = int(self.cell_item.max()) + 1 if items else 1
        # rest utility: everything after the cell inside its own sequence
        csum = np.cumsum(self.cell_util)
        seq_total_end = csum[self.seq_cell_end - 1] if items else csum
        self.cell_ru = (seq_total_end[self.cell_seq] - csum) if items else np.empty(0, np.int64)
        self.cell_key = self.cell_gid * self.n_items + self.cell_item
        order = np.argsort(self.cell_item, kind="stable")
        self.item_cells = order.astype(np.int64)
        counts = np.bincount(self.cell_item, minlength=self.n_items)
        self.item_ptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.empty = np.empty(0, np.int64)

    @property
    def n_sequences(self) -> int:
        return int(self.sids.size)

    @property
    def n_cells(self) -> int:
        return int(self.cell_item.size)


@dataclass(frozen=True)
class ChainElement:
    tid: int
    utility: int
    rest_utility: int


@dataclass(frozen=True)
class ChainHead:
    sid: int
    sru: int
    prel: int
    elements: tuple[ChainElement, ...]


class TargetedChain:
    """Projected database of one pattern, restricted to promising positions."""

    __slots__ = (
        "pattern", "state", "cells", "utils", "head_start", "head_seq", "head_umax", "head_sru", "utility", "sru",
        "tdu", "frontier", "_db",
    )

    def __init__(
        self,
        pattern: Pattern,
        state: PrefixState,
        cells,
        utils,
        summary,
        db: PackedDatabase,
        tdu: int | None = None,
        frontier: tuple[int, int] = (0, 0),
    ):
        self.pattern = pattern
        self.state = state
        # TDU with respect to the chain this one was projected from
        self.tdu = tdu
        # target itemsets (count, items) wholly matched before the last itemset
        self.frontier = frontier
        self.cells = cells
        self.utils = utils
        self.head_start, self.head_seq, self.head_umax, self.head_sru = summary
        self.utility = int(self.head_umax.sum())
        self.sru = int(self.head_sru.sum())
        self._db = db

    def __len__(self) -> int:
        return int(self.head_seq.size)

    def __bool__(self) -> bool:
        return self.head_seq.size > 0

    @property
    def heads(self) -> list[ChainHead]:
        db = self._db
        out = []
        bounds = list(self.head_start) + [self.cells.size]
        for h, s in enumerate(self.head_seq):
            lo, hi = bounds[h], bounds[h + 1]
            elems = tuple(
                ChainElement(int(db.cell_pos[c]), int(u), int(db.cell_ru[c]))
                for c, u in zip(self.cells[lo:hi], self.utils[lo:hi])
            )
            out.append(ChainHead(int(db.sids[s]), int(self.head_sru[h]), self.state.prel, elems))
        return out

    def head_for(self, sid: int) -> ChainHead | None:
        return next((h for h in self.heads if h.sid == sid), None)

    def __repr__(self) -> str:
        return f"TargetedChain({self.pattern}, heads={len(self)}, u={self.utility}, sru={self.sru})"


class ChainSpace:
    """Everything a projection needs: packed cells, the target, and its LI-Table.

    An empty target turns every extension position promising, which is how
    the target-free baseline reuses this machinery.
    """

    def __init__(self, filtered: QDatabase, target: Pattern, backend: str | ModuleType | None = None):
        self.database = filtered
        self.target = target
        self.packed = PackedDatabase(filtered)
        self.kernels = backend if isinstance(backend, ModuleType) else get_backend(backend)
        self.li_table: LITable = build_li_table(target, filtered)
        keys = self.li_table.residual_keys()
        n = target.size
        self._residual_col = {k: n + c for c, k in enumerate(keys)}
        mat = np.zeros((len(filtered), n + len(keys)), dtype=np.int64)
        for r, seq in enumerate(filtered.sequences):
            row = self.li_table.row(seq.sid)
            mat[r, :n] = row.last
            for k, c in self._residual_col.items():
                mat[r, c] = row.residual[k]
        self.li_matrix = mat

    @property
    def target_length(self) -> int:
        return len(self.target)

    def state_of(self, pattern: Pattern) -> PrefixState:
        return longest_prefix_state(self.target, pattern)

    def _promising_params(self, state: PrefixState) -> tuple[int, int, int]:
        i = state.suffix_start_itemset
        if i is None:
            return 0, 0, 0
        if state.matched:
            return 2, self._residual_col[(i, state.matched)], 0
        return 1, i, state.suffix_partial[0]

    def _state(self, frontier: tuple[int, int], last: tuple[int, ...]) -> tuple[PrefixState, tuple[int, int]]:
        """Prefix state from the parent's frontier, plus the frontier an
        S-extension of the new pattern starts from."""
        state, k, prel = state_at_frontier(self.target, frontier[0], frontier[1], last)
        return state, (k, prel)

    def root(self) -> TargetedChain:
        """Chain of the empty pattern: one head per sequence, SRU = u(S)."""
        db = self.packed
        n = db.n_sequences
        idx = np.arange(n, dtype=np.int64)
        summary = (idx, idx, np.zeros(n, np.int64), db.seq_util.copy())
        return TargetedChain(Pattern(), self.state_of(Pattern()), db.empty, db.empty, summary, db)

    def single(self, item: int) -> TargetedChain:
        db = self.packed
        if 0 <= item < db.n_items:
            cells = db.item_cells[db.item_ptr[item] : db.item_ptr[item + 1]]
        else:
            cells = db.empty
        utils = db.cell_util[cells]
        state, _ = self._state((0, 0), (item,))
        mode, col, min_item = self._promising_params(state)
        if mode:
            keep = self.kernels.promising(db, cells, mode, col, min_item, self.li_matrix)
            cells, utils = cells[keep], utils[keep]
        summary = self.kernels.summarize(db, cells, utils)
        tdu = int(db.seq_util[summary[1]].sum())
        return TargetedChain(Pattern._trusted(((item,),)), state, cells, utils, summary, db, tdu)

    def initial_chains(self) -> dict[int, TargetedChain]:
        """Chains of every 1-sequence ``<{i}>`` for the items of the database."""
        present = np.flatnonzero(np.diff(self.packed.item_ptr))
        return {int(i): self.single(int(i)) for i in present}

    def project(self, parent: TargetedChain, item: int, kind: Extension | str) -> TargetedChain | None:
        """Chain of an I- or S-extension of ``parent``, or None when empty."""
        kind = Extension(kind)
        pattern = parent.pattern
        if kind is Extension.I:
            last = pattern.last_item
            if last is None or item <= last:
                raise ExtensionError(f"non-canonical extension: {item} after {last}")
            child = pattern.i_extend(item)
            frontier = parent.frontier
            code = 0
        else:
            if not pattern.itemsets:
                return self.single(item) or None
            child = pattern.s_extend(item)
            frontier = self._state(parent.frontier, pattern.itemsets[-1])[1]
            code = 1
        state, _ = self._state(frontier, child.itemsets[-1])
        mode, col, min_item = self._promising_params(state)
        cells, utils, summary, tdu = self.kernels.child(
            self.packed, parent.cells, parent.utils, parent.head_seq, parent.head_sru,
            item, code, mode, col, min_item, self.li_matrix,
        )
        if summary[1].size == 0:
            return None
        return TargetedChain(child, state, cells, utils, summary, self.packed, tdu, frontier)

    def extension_items(self, chain: TargetedChain) -> tuple[np.ndarray, np.ndarray]:
        """Candidate items for I- and S-extensions of ``chain``, each ascending."""
        if not chain.pattern.itemsets:
            return np.empty(0, np.int64), np.flatnonzero(np.diff(self.packed.item_ptr)).astype(np.int64)
        return self.kernels.extension_items(self.packed, chain.cells, chain.head_start)


def pattern_utility(chain: TargetedChain | None) -> int:
    return 0 if chain is None else chain.utility


def sru_of(chain: TargetedChain | None) -> int:
    return 0 if chain is None else chain.sru


def tdu_of(parent: TargetedChain, child: TargetedChain | None) -> int:
    """Sum of the parent's per-sequence SRU over the sequences the child keeps.

    A kept head has at least one promising position, and the rest sequence at
    the pivot contains every later rest sequence, so the pivot is promising
    in each of these sequences.
    """
    if child is None or not child:
        return 0
    idx = np.searchsorted(parent.head_seq, child.head_seq)
    return int(parent.head_sru[idx].sum())
