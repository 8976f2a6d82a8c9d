from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import patterns, qsequences

from tusq import Pattern, QSequence, build_li_table, contains, extension_positions, find_instances, last_instance
from tusq.matching import (
    is_promising,
    is_subsequence,
    itemset_matches,
    itemset_subset,
    longest_prefix_state,
    prefix_pattern,
    rest_sequence,
    suffix_pattern,
)
from tusq.miner import dpp_filter
from tusq.reference import literal_promising

A, B, C, D, E, F = range(1, 7)
T = Pattern.of([A], [C, E], [C])


def seq(db, sid):
    return next(s for s in db.sequences if s.sid == sid)


def test_itemset_match_vs_subset(example):
    x1 = seq(example.database, 1).itemsets[0]
    assert itemset_matches((A, B), x1)
    assert not itemset_matches((A,), x1) and itemset_subset((A,), x1)
    assert not itemset_matches((), x1) and itemset_subset((), x1)


def test_contains(example):
    s2 = seq(example.database, 2)
    assert contains(Pattern.of([A], [C, D]), s2)
    assert contains(Pattern(), s2)
    s_prime = ((B, C), (A,), (A, C, F), (D, E, F))
    assert is_subsequence(Pattern.of([A], [A, F], [D, E]), s_prime)
    assert not is_subsequence(Pattern.of([C, D, E], [D, F]), s_prime)


def test_find_instances(example):
    db = example.database
    ac = Pattern.of([A], [C])
    assert find_instances(ac, seq(db, 2)) == {(1, 2), (1, 4), (3, 4)}
    assert find_instances(ac, seq(db, 1)) == {(1, 2), (1, 3)}
    assert find_instances(Pattern.of([F]), seq(db, 1)) == set()


def test_extension_positions(example):
    db = example.database
    assert extension_positions(Pattern.of([A], [C]), seq(db, 1)) == [2, 3]
    assert extension_positions(Pattern.of([A], [C, E]), seq(db, 2)) == [2, 4]
    assert extension_positions(Pattern.of([F]), seq(db, 1)) == []


def test_last_instance(example):
    db = example.database
    ac = Pattern.of([A], [C])
    assert last_instance(ac, seq(db, 1)) == (1, 3)
    assert last_instance(ac, seq(db, 2)) == (3, 4)
    assert last_instance(T, seq(db, 2)) == (1, 2, 4)
    assert last_instance(T, seq(db, 3)) is None


def test_li_table_rows(example):
    li = build_li_table(T, dpp_filter(example.database, T))
    assert dict(li.rows) == {1: (1, 2, 3), 2: (1, 2, 4), 4: (1, 3, 4), 5: (1, 2, 3)}


def test_li_table_single_itemset_target(example):
    target = Pattern.of([A])
    filtered = dpp_filter(example.database, target)
    li = build_li_table(target, filtered)
    for s in filtered:
        assert li[s.sid] == (max(j for j in range(1, len(s) + 1) if A in s.itemset(j)),)


def test_rest_sequence(example):
    s1 = seq(example.database, 1)
    rest = rest_sequence(s1, Pattern.of([A], [C]), 2)
    assert [x.item_ids for x in rest] == [(E,), (C, D)]
    assert rest_sequence(s1, Pattern.of([C, D]), 3) == ()


def test_prefix_state_examples():
    st1 = longest_prefix_state(T, Pattern.of([A], [C]))
    assert prefix_pattern(T, st1) == Pattern.of([A], [C])
    assert suffix_pattern(T, st1) == Pattern.of([E], [C])
    for s in (Pattern.of([A], [C, F]), Pattern.of([A], [C], [D])):
        state = longest_prefix_state(T, s)
        assert prefix_pattern(T, state) == Pattern.of([A])
        assert suffix_pattern(T, state) == Pattern.of([C, E], [C])
        assert state.prel == 1
    full = longest_prefix_state(T, T)
    assert full.complete and full.prel == len(T) and suffix_pattern(T, full) == Pattern()


def test_is_promising_examples(example):
    filtered = dpp_filter(example.database, T)
    li = build_li_table(T, filtered)
    ac = Pattern.of([A], [C])
    state = longest_prefix_state(T, ac)
    assert is_promising(2, state, li.row(1), C)
    assert not is_promising(3, state, li.row(1), C)
    assert is_promising(5, longest_prefix_state(T, T), li.row(1), C)


def test_residual_suffix_can_live_after_the_extension_itemset():
    # The residual {c} of target itemset {a c} only fits in the second itemset.
    target = Pattern.of([A, C])
    s = QSequence.of(1, [[(A, 1)], [(A, 1), (C, 1)]])
    p = Pattern.of([A])
    state = longest_prefix_state(target, p)
    assert state.is_partial and state.suffix_partial == (C,)
    row = build_li_table(target, [s]).row(1)
    assert literal_promising(s, p, 1, suffix_pattern(target, state))
    assert is_promising(1, state, row, A)


def brute_prefix(target: Pattern, s: Pattern) -> tuple[int, Pattern]:
    """Longest item-prefix of ``target`` contained by ``s``, trying every length."""
    its = target.itemsets
    for total in range(len(target), -1, -1):
        full, taken = [], 0
        while len(full) < len(its) and taken + len(its[len(full)]) <= total:
            taken += len(its[len(full)])
            full.append(its[len(full)])
        lead = its[len(full)][: total - taken] if total > taken else ()
        if not lead:
            if is_subsequence(tuple(full), s):
                return total, Pattern(tuple(full))
            continue
        last = s.itemsets[-1]
        rest = its[len(full)][len(lead) :]
        if (
            is_subsequence(tuple(full), s.itemsets[:-1])
            and set(lead) <= set(last)
            and all(i > last[-1] for i in rest)
        ):
            return total, Pattern(tuple(full) + (lead,))
    raise AssertionError("the empty prefix always matches")


@settings(max_examples=300, deadline=None)
@given(patterns(alphabet=5), patterns(alphabet=5, max_itemsets=4))
def test_prefix_state_matches_brute_force(target, s):
    state = longest_prefix_state(target, s)
    prel, pre = brute_prefix(target, s)
    assert state.prel == prel
    assert prefix_pattern(target, state) == pre
    flat_suffix = [i for x in suffix_pattern(target, state).itemsets for i in x]
    assert flat_suffix == target.flat()[prel:]


@st.composite
def promising_cases(draw):
    s_seq = draw(qsequences(alphabet=5, max_itemsets=5))
    plain = s_seq.plain()
    m = draw(st.integers(1, min(3, len(plain))))
    picks = sorted(draw(st.sets(st.integers(0, len(plain) - 1), min_size=m, max_size=m)))
    target = Pattern(tuple(tuple(sorted(draw(st.sets(st.sampled_from(plain[j]), min_size=1)))) for j in picks))
    pat = draw(patterns(alphabet=5))
    return s_seq, target, pat


@settings(max_examples=400, deadline=None)
@given(promising_cases())
def test_is_promising_equals_rest_sequence_containment(case):
    s_seq, target, pat = case
    row = build_li_table(target, [s_seq]).row(s_seq.sid)
    state = longest_prefix_state(target, pat)
    suffix = suffix_pattern(target, state)
    for ep in extension_positions(pat, s_seq):
        assert is_promising(ep, state, row, pat.last_item) == literal_promising(s_seq, pat, ep, suffix)


def test_is_promising_accepts_plain_last_instance_tuple():
    state = longest_prefix_state(T, Pattern.of([A]))
    assert is_promising(1, state, (1, 2, 3), A)
    assert not is_promising(3, state, (1, 2, 3), A)
    partial = longest_prefix_state(T, Pattern.of([A], [C]))
    with pytest.raises(ValueError, match="residual"):
        is_promising(2, partial, (1, 2, 3), C)
