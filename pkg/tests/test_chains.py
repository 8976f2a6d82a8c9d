from __future__ import annotations

import pytest

from tusq import ExtensionError, Pattern
from tusq.chains import ChainSpace, Extension, PackedDatabase, build_qmatrix, pattern_utility, sru_of, tdu_of
from tusq.miner import dpp_filter

A, B, C, D, E, F = range(1, 7)
T = Pattern.of([A], [C, E], [C])


@pytest.fixture
def space(example, backend):
    return ChainSpace(dpp_filter(example.database, T), T, backend)


def heads(chain):
    return {h.sid: h for h in chain.heads}


def test_qmatrix_of_s1(example):
    s1 = example.database.sequences[0]
    qm = build_qmatrix(s1, example.database.utilities)
    assert qm.items == (A, B, C, D, E)
    assert qm.u(B, 1) == 3 and qm.u(C, 3) == 4 and qm.u(A, 2) == 0
    assert qm.ru(A, 1) == 13
    assert qm.ru(D, 3) == 0


def test_packed_rest_utility_ends_at_zero(example):
    packed = PackedDatabase(example.database)
    assert (packed.cell_ru[packed.seq_cell_end - 1] == 0).all()
    assert packed.seq_util.tolist() == [15, 18, 19, 12, 13]


def test_initial_chain_of_a_keeps_only_promising_positions(space):
    chains = space.initial_chains()
    h = heads(chains[A])
    assert [(e.tid, e.utility) for e in h[2].elements] == [(1, 6)]


def test_initial_chain_of_f_is_empty(space):
    assert not space.initial_chains()[F]
    assert space.single(99).utility == 0


def test_project_a_then_c(space):
    ac = space.project(space.single(A), C, Extension.S)
    assert [(e.tid, e.utility) for e in heads(ac)[1].elements] == [(2, 3)]


def test_sru_of_a_ce(space):
    ac = space.project(space.single(A), C, "S")
    ace = space.project(ac, E, "I")
    assert sru_of(ace) == 52
    assert {sid: h.sru for sid, h in heads(ace).items()} == {1: 12, 2: 15, 4: 12, 5: 13}


def test_tdu_of_a_cd(space):
    ac = space.project(space.single(A), C, "S")
    acd = space.project(ac, D, "I")
    assert tdu_of(ac, acd) == 18
    assert set(heads(acd)) == {2}
    assert heads(ac)[2].sru == 18


def test_pattern_utilities(space, example):
    ac = space.project(space.single(A), C, "S")
    acec = space.project(space.project(ac, E, "I"), C, "S")
    assert pattern_utility(acec) == 38
    full = ChainSpace(dpp_filter(example.database, T), Pattern(), space.kernels)
    assert pattern_utility(full.project(full.single(A), C, "S")) == 26
    assert pattern_utility(None) == 0 and sru_of(None) == 0


def test_absent_item_projects_to_none(space):
    ac = space.project(space.single(A), C, "S")
    assert space.project(ac, 42, "S") is None
    assert space.project(ac, 42, "I") is None
    assert tdu_of(ac, None) == 0


def test_non_canonical_i_extension_rejected(space):
    ac = space.project(space.single(A), C, "S")
    with pytest.raises(ExtensionError):
        space.project(ac, B, "I")
    with pytest.raises(ExtensionError):
        space.project(space.root(), A, "I")


def test_root_chain(space):
    root = space.root()
    assert root.sru == 58 and len(root) == 4
    assert space.project(root, A, "S").utility == space.single(A).utility


@pytest.mark.parametrize("seed", range(12))
def test_fused_projection_matches_the_separate_steps(seed, backend):
    from helpers import random_trial

    from tusq.matching import longest_prefix_state

    trial = random_trial(seed)
    sp = ChainSpace(dpp_filter(trial.db, trial.target), trial.target, backend)
    k, db = sp.kernels, sp.packed

    def check(parent, depth):
        ilist, slist = sp.extension_items(parent)
        for kind, items in ((Extension.I, ilist), (Extension.S, slist)):
            for item in items.tolist():
                child = sp.project(parent, item, kind)
                step = k.i_project if kind is Extension.I else k.s_project
                cells, utils = step(db, parent.cells, parent.utils, item)
                pattern = parent.pattern.i_extend(item) if kind is Extension.I else parent.pattern.s_extend(item)
                state = longest_prefix_state(trial.target, pattern)
                mode, col, lo = sp._promising_params(state)
                keep = k.promising(db, cells, mode, col, lo, sp.li_matrix)
                if child is None:
                    assert not keep.any()
                    continue
                assert child.pattern == pattern and child.state == state
                assert child.cells.tolist() == cells[keep].tolist()
                assert child.utils.tolist() == utils[keep].tolist()
                assert child.tdu == tdu_of(parent, child)
                if depth:
                    check(child, depth - 1)

    for chain in sp.initial_chains().values():
        if chain:
            assert chain.state == longest_prefix_state(trial.target, chain.pattern)
            check(chain, 3)
