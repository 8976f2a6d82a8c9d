"""Loop kernels compiled with numba; same contracts as the numpy versions."""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True, nogil=True)
def _i_project(p_cells, p_utils, item, cell_item, cell_gid, gid_end, cell_util):
    n = p_cells.shape[0]
    out_c = np.empty(n, np.int64)
    out_u = np.empty(n, np.int64)
    k = 0
    for e in range(n):
        c = p_cells[e]
        end = gid_end[cell_gid[c]]
        for j in range(c + 1, end):
            it = cell_item[j]
            if it == item:
                out_c[k] = j
                out_u[k] = p_utils[e] + cell_util[j]
                k += 1
                break
            if it > item:
                break
    return out_c[:k], out_u[:k]


@njit(cache=True, nogil=True)
def _s_project(p_cells, p_utils, occ, cell_seq, cell_gid, cell_util):
    n = p_cells.shape[0]
    m = occ.shape[0]
    out_c = np.empty(m, np.int64)
    out_u = np.empty(m, np.int64)
    k = 0
    e = 0
    cur_seq = -1
    best = 0
    for o in range(m):
        c = occ[o]
        g = cell_gid[c]
        while e < n and cell_gid[p_cells[e]] < g:
            ps = cell_seq[p_cells[e]]
            if ps != cur_seq:
                cur_seq = ps
                best = p_utils[e]
            elif p_utils[e] > best:
                best = p_utils[e]
            e += 1
        if cur_seq == cell_seq[c]:
            out_c[k] = c
            out_u[k] = best + cell_util[c]
            k += 1
    return out_c[:k], out_u[:k]


@njit(cache=True, nogil=True)
def _promising(cells, mode, col, min_item, li_matrix, cell_seq, cell_pos, cell_item):
    n = cells.shape[0]
    out = np.ones(n, np.bool_)
    if mode == 0:
        return out
    for e in range(n):
        c = cells[e]
        li = li_matrix[cell_seq[c], col]
        pos = cell_pos[c]
        if mode == 2:
            out[e] = li >= pos
        else:
            out[e] = li > pos or (li == pos and min_item > cell_item[c])
    return out


@njit(cache=True, nogil=True)
def _summarize(cells, utils, cell_seq, cell_ru):
    n = cells.shape[0]
    starts = np.empty(n, np.int64)
    seqs = np.empty(n, np.int64)
    umax = np.empty(n, np.int64)
    sru = np.empty(n, np.int64)
    h = -1
    prev = -1
    for e in range(n):
        c = cells[e]
        s = cell_seq[c]
        ru = cell_ru[c]
        b = utils[e] + ru if ru > 0 else 0
        if s != prev:
            h += 1
            starts[h] = e
            seqs[h] = s
            umax[h] = utils[e]
            sru[h] = b
            prev = s
        else:
            if utils[e] > umax[h]:
                umax[h] = utils[e]
            if b > sru[h]:
                sru[h] = b
    h += 1
    return starts[:h], seqs[:h], umax[:h], sru[:h]


@njit(cache=True, nogil=True)
def _extension_items(cells, head_start, n_items, cell_item, cell_gid, cell_seq, gid_end, seq_cell_end):
    imark = np.zeros(n_items, np.bool_)
    smark = np.zeros(n_items, np.bool_)
    for e in range(cells.shape[0]):
        c = cells[e]
        for j in range(c + 1, gid_end[cell_gid[c]]):
            imark[cell_item[j]] = True
    for h in range(head_start.shape[0]):
        c = cells[head_start[h]]
        for j in range(gid_end[cell_gid[c]], seq_cell_end[cell_seq[c]]):
            smark[cell_item[j]] = True
    return np.flatnonzero(imark).astype(np.int64), np.flatnonzero(smark).astype(np.int64)


@njit(cache=True, nogil=True)
def _child(
    p_cells, p_utils, p_head_seq, p_head_sru, item, kind, mode, col, min_item, li_matrix,
    cell_item, cell_util, cell_gid, cell_seq, cell_pos, cell_ru, gid_end, occ,
):
    if kind == 0:
        cells, utils = _i_project(p_cells, p_utils, item, cell_item, cell_gid, gid_end, cell_util)
    else:
        cells, utils = _s_project(p_cells, p_utils, occ, cell_seq, cell_gid, cell_util)
    if mode != 0:
        keep = _promising(cells, mode, col, min_item, li_matrix, cell_seq, cell_pos, cell_item)
        cells, utils = cells[keep], utils[keep]
    starts, seqs, umax, sru = _summarize(cells, utils, cell_seq, cell_ru)
    tdu = 0
    h = 0
    for k in range(seqs.shape[0]):
        while p_head_seq[h] < seqs[k]:
            h += 1
        tdu += p_head_sru[h]
    return cells, utils, starts, seqs, umax, sru, tdu


def i_project(db, p_cells, p_utils, item):
    return _i_project(p_cells, p_utils, item, db.cell_item, db.cell_gid, db.gid_end, db.cell_util)


def s_project(db, p_cells, p_utils, item):
    return _s_project(p_cells, p_utils, _occurrences(db, p_cells, item), db.cell_seq, db.cell_gid, db.cell_util)


def promising(db, cells, mode, col, min_item, li_matrix):
    return _promising(cells, mode, col, min_item, li_matrix, db.cell_seq, db.cell_pos, db.cell_item)


def summarize(db, cells, utils):
    return _summarize(cells, utils, db.cell_seq, db.cell_ru)


def extension_items(db, cells, head_start):
    if cells.size == 0:
        empty = np.empty(0, np.int64)
        return empty, empty
    return _extension_items(
        cells, head_start, db.n_items, db.cell_item, db.cell_gid, db.cell_seq, db.gid_end, db.seq_cell_end
    )


def _occurrences(db, p_cells, item):
    if p_cells.size == 0 or item >= db.n_items:
        return np.empty(0, np.int64)
    occ = db.item_cells[db.item_ptr[item] : db.item_ptr[item + 1]]
    lo = np.searchsorted(occ, p_cells[0] + 1)
    hi = np.searchsorted(occ, db.seq_cell_end[db.cell_seq[p_cells[-1]]])
    return occ[lo:hi]


def child(db, p_cells, p_utils, p_head_seq, p_head_sru, item, kind, mode, col, min_item, li_matrix):
    occ = _occurrences(db, p_cells, item) if kind == 1 else db.empty
    cells, utils, starts, seqs, umax, sru, tdu = _child(
        p_cells, p_utils, p_head_seq, p_head_sru, item, kind, mode, col, min_item, li_matrix,
        db.cell_item, db.cell_util, db.cell_gid, db.cell_seq, db.cell_pos, db.cell_ru, db.gid_end, occ,
    )
    return cells, utils, (starts, seqs, umax, sru), int(tdu)
