"""Random small instances shared by the property and acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from hypothesis import strategies as st

from tusq import Pattern, QDatabase, QItemset, QSequence, UtilityTable
from tusq.model import QItem

XIS = ("0.05", "0.1", "0.3", "0.5", "0.8")
MAX_FLAT = 10


@dataclass(frozen=True)
class Trial:
    seed: int
    db: QDatabase
    target: Pattern

    @property
    def max_flat(self) -> int:
        return max(s.flat_length for s in self.db.sequences)


def random_sequence(rng: random.Random, sid: int, alphabet: int, flat_cap: int = MAX_FLAT) -> QSequence:
    itemsets = []
    budget = flat_cap
    for _ in range(rng.randint(1, 6)):
        k = min(rng.randint(1, 4), alphabet, budget)
        if k == 0:
            break
        items = rng.sample(range(1, alphabet + 1), k)
        itemsets.append(QItemset.of((i, rng.randint(1, 5)) for i in items))
        budget -= k
    return QSequence(sid, tuple(itemsets))


def random_target(rng: random.Random, seq: QSequence) -> Pattern:
    m = rng.randint(1, min(3, len(seq)))
    picks = sorted(rng.sample(range(len(seq)), m))
    itemsets = []
    for j in picks:
        ids = seq.itemsets[j].item_ids
        itemsets.append(tuple(sorted(rng.sample(ids, rng.randint(1, len(ids))))))
    return Pattern(tuple(itemsets))


def random_trial(seed: int, flat_cap: int = MAX_FLAT) -> Trial:
    rng = random.Random(seed)
    alphabet = rng.randint(2, 8)
    n = rng.randint(1, 8)
    seqs = tuple(random_sequence(rng, sid, alphabet, flat_cap) for sid in range(1, n + 1))
    table = UtilityTable({i: rng.randint(1, 5) for i in range(1, alphabet + 1)})
    db = QDatabase(seqs, table)
    return Trial(seed, db, random_target(rng, rng.choice(seqs)))


@st.composite
def qsequences(draw, sid: int = 1, alphabet: int = 6, max_itemsets: int = 5) -> QSequence:
    n = draw(st.integers(1, max_itemsets))
    itemsets = []
    for _ in range(n):
        items = draw(st.sets(st.integers(1, alphabet), min_size=1, max_size=min(4, alphabet)))
        itemsets.append(QItemset(tuple(QItem(i, draw(st.integers(1, 5))) for i in sorted(items))))
    return QSequence(sid, tuple(itemsets))


@st.composite
def patterns(draw, alphabet: int = 6, max_itemsets: int = 3) -> Pattern:
    n = draw(st.integers(1, max_itemsets))
    return Pattern(
        tuple(tuple(sorted(draw(st.sets(st.integers(1, alphabet), min_size=1, max_size=3)))) for _ in range(n))
    )


def utility_table(alphabet: int = 6) -> UtilityTable:
    return UtilityTable({i: (i % 5) + 1 for i in range(1, alphabet + 1)})
