"""Vectorised numpy implementations of the projection kernels."""

from __future__ import annotations

import numpy as np

NAME = "numpy"

_EMPTY = np.empty(0, dtype=np.int64)


def _ranges(starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Concatenate ``arange(s, e)`` for every pair without a Python loop."""
    lens = np.maximum(ends - starts, 0)
    total = int(lens.sum())
    if total == 0:
        return _EMPTY
    offsets = np.repeat(np.cumsum(lens) - lens, lens)
    return np.repeat(starts, lens) + (np.arange(total, dtype=np.int64) - offsets)


def _segment_cummax(values: np.ndarray, seg: np.ndarray) -> np.ndarray:
    """Running maximum of ``values`` restarted whenever ``seg`` changes."""
    if values.size == 0:
        return values
    rank = np.concatenate(([0], np.cumsum(seg[1:] != seg[:-1])))
    big = int(values.max()) + 1
    if int(rank[-1]) * big < 2**62:
        shifted = rank * big + values
        return np.maximum.accumulate(shifted) - rank * big
    out = values.copy()
    for k in range(1, out.size):
        if rank[k] == rank[k - 1] and out[k - 1] > out[k]:
            out[k] = out[k - 1]
    return out


def i_project(db, p_cells: np.ndarray, p_utils: np.ndarray, item: int):
    if p_cells.size == 0 or item >= db.n_items:
        return _EMPTY, _EMPTY
    keys = db.cell_gid[p_cells] * db.n_items + item
    idx = np.searchsorted(db.cell_key, keys)
    np.minimum(idx, db.cell_key.size - 1, out=idx)
    hit = db.cell_key[idx] == keys
    cells = idx[hit]
    return cells, p_utils[hit] + db.cell_util[cells]


def s_project(db, p_cells: np.ndarray, p_utils: np.ndarray, item: int):
    if p_cells.size == 0 or item >= db.n_items:
        return _EMPTY, _EMPTY
    occ = db.item_cells[db.item_ptr[item] : db.item_ptr[item + 1]]
    lo = np.searchsorted(occ, p_cells[0] + 1)
    hi = np.searchsorted(occ, db.seq_cell_end[db.cell_seq[p_cells[-1]]])
    occ = occ[lo:hi]
    if occ.size == 0:
        return _EMPTY, _EMPTY
    p_gid = db.cell_gid[p_cells]
    p_seq = db.cell_seq[p_cells]
    idx = np.searchsorted(p_gid, db.cell_gid[occ], side="left") - 1
    ok = idx >= 0
    safe = np.maximum(idx, 0)
    ok &= p_seq[safe] == db.cell_seq[occ]
    best = _segment_cummax(p_utils, p_seq)
    cells = occ[ok]
    return cells, best[safe[ok]] + db.cell_util[cells]


def promising(db, cells: np.ndarray, mode: int, col: int, min_item: int, li_matrix: np.ndarray) -> np.ndarray:
    if mode == 0 or cells.size == 0:
        return np.ones(cells.size, dtype=np.bool_)
    li = li_matrix[db.cell_seq[cells], col]
    pos = db.cell_pos[cells]
    if mode == 2:
        return li >= pos
    return (li > pos) | ((li == pos) & (min_item > db.cell_item[cells]))


def summarize(db, cells: np.ndarray, utils: np.ndarray):
    """Split a chain's flat elements into heads: start offsets, sequence index,
    max element utility and SRU per head."""
    if cells.size == 0:
        return _EMPTY, _EMPTY, _EMPTY, _EMPTY
    seq = db.cell_seq[cells]
    starts = np.flatnonzero(np.concatenate(([True], seq[1:] != seq[:-1])))
    ru = db.cell_ru[cells]
    bound = np.where(ru > 0, utils + ru, 0)
    return (
        starts,
        seq[starts],
        np.maximum.reduceat(utils, starts),
        np.maximum.reduceat(bound, starts),
    )


def extension_items(db, cells: np.ndarray, head_start: np.ndarray):
    if cells.size == 0:
        return _EMPTY, _EMPTY
    ends = db.gid_end[db.cell_gid[cells]]
    ilist = np.unique(db.cell_item[_ranges(cells + 1, ends)])
    first = cells[head_start]
    s_starts = db.gid_end[db.cell_gid[first]]
    s_ends = db.seq_cell_end[db.cell_seq[first]]
    slist = np.unique(db.cell_item[_ranges(s_starts, s_ends)])
    return ilist, slist


def child(db, p_cells, p_utils, p_head_seq, p_head_sru, item, kind, mode, col, min_item, li_matrix):
    """Project, filter to promising positions and summarise in one step.

    Also returns the TDU: the parent's per-sequence SRU summed over the
    sequences in which the child keeps a head.
    """
    project = i_project if kind == 0 else s_project
    cells, utils = project(db, p_cells, p_utils, item)
    if mode:
        keep = promising(db, cells, mode, col, min_item, li_matrix)
        cells, utils = cells[keep], utils[keep]
    summary = summarize(db, cells, utils)
    idx = np.searchsorted(p_head_seq, summary[1])
    return cells, utils, summary, int(p_head_sru[idx].sum())
