"""Quantitative sequence data and elementary utility arithmetic.

Items are non-negative integers and their natural order is the canonical
(lexicographic) order used everywhere else in the package. Itemset positions
inside a q-sequence are 1-based, matching the usual ``<k1, ..., km>``
instance notation.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InvalidDataError, ItemNotPresentError, UnknownItemError


class QItem(NamedTuple):
    item: int
    quantity: int


@dataclass(frozen=True)
class QItemset:
    items: tuple[QItem, ...]

    def __post_init__(self) -> None:
        prev = -1
        for qi in self.items:
            if qi.item < 0:
                raise InvalidDataError(f"negative item id {qi.item}")
            if qi.quantity < 1:
                raise InvalidDataError(f"item {qi.item} has quantity {qi.quantity} < 1")
            if qi.item <= prev:
                raise InvalidDataError("item ids must be strictly increasing within an itemset")
            prev = qi.item

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> QItemset:
        """Build from ``(item, quantity)`` pairs given in any order."""
        return cls(tuple(QItem(int(i), int(q)) for i, q in sorted(pairs)))

    @property
    def item_ids(self) -> tuple[int, ...]:
        return tuple(qi.item for qi in self.items)

    def quantity_of(self, item: int) -> int:
        for qi in self.items:
            if qi.item == item:
                return qi.quantity
        raise ItemNotPresentError(f"item not present: {item}")

    def __contains__(self, item: object) -> bool:
        return any(qi.item == item for qi in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[QItem]:
        return iter(self.items)


@dataclass(frozen=True)
class QSequence:
    sid: int
    itemsets: tuple[QItemset, ...]

    def __post_init__(self) -> None:
        if not self.itemsets:
            raise InvalidDataError(f"sequence {self.sid} is empty")
        for x in self.itemsets:
            if not x.items:
                raise InvalidDataError(f"sequence {self.sid} has an empty itemset")

    @classmethod
    def of(cls, sid: int, itemsets: Iterable[Iterable[tuple[int, int]]]) -> QSequence:
        return cls(sid, tuple(QItemset.of(x) for x in itemsets))

    def __len__(self) -> int:
        return len(self.itemsets)

    def itemset(self, j: int) -> QItemset:
        """Return the ``j``-th itemset (1-based)."""
        if not 1 <= j <= len(self.itemsets):
            raise IndexError(f"itemset index {j} out of range 1..{len(self.itemsets)}")
        return self.itemsets[j - 1]

    @property
    def flat_length(self) -> int:
        return sum(len(x) for x in self.itemsets)

    def plain(self) -> tuple[tuple[int, ...], ...]:
        return tuple(x.item_ids for x in self.itemsets)


class UtilityTable(Mapping[int, int]):
    """Read-only map from item to its external utility (unit profit)."""

    def __init__(self, profits: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        data = dict(profits.items() if isinstance(profits, Mapping) else profits)
        for item, p in data.items():
            if isinstance(p, bool) or not isinstance(p, int):
                raise InvalidDataError(f"profit of item {item} must be an integer, got {p!r}")
            if p < 0:
                raise InvalidDataError(f"profit of item {item} is negative")
        self._profits: dict[int, int] = dict(sorted(data.items()))

    def __getitem__(self, item: int) -> int:
        try:
            return self._profits[item]
        except KeyError:
            raise UnknownItemError(f"unknown item: {item}") from None

    def __iter__(self) -> Iterator[int]:
        return iter(self._profits)

    def __len__(self) -> int:
        return len(self._profits)

    def __repr__(self) -> str:
        return f"UtilityTable({self._profits!r})"


@dataclass(frozen=True)
class QDatabase:
    sequences: tuple[QSequence, ...]
    utilities: UtilityTable = field(default_factory=UtilityTable)

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for seq in self.sequences:
            if seq.sid in seen:
                raise InvalidDataError(f"duplicate sid {seq.sid}")
            seen.add(seq.sid)
            for x in seq.itemsets:
                for qi in x.items:
                    if qi.item not in self.utilities:
                        raise UnknownItemError(f"unknown item: {qi.item} (sequence {seq.sid})")

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self) -> Iterator[QSequence]:
        return iter(self.sequences)

    @property
    def sids(self) -> tuple[int, ...]:
        return tuple(s.sid for s in self.sequences)

    def items(self) -> list[int]:
        """Distinct items occurring in the sequences, ascending."""
        return sorted({qi.item for s in self.sequences for x in s.itemsets for qi in x.items})

    def subset(self, sequences: Iterable[QSequence]) -> QDatabase:
        return QDatabase(tuple(sequences), self.utilities)


@dataclass(frozen=True, order=True)
class Pattern:
    """A sequence of plain itemsets, e.g. ``<{a}, {c e}, {c}>``."""

    itemsets: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        for x in self.itemsets:
            if not x:
                raise InvalidDataError("patterns cannot hold empty itemsets")
            if any(b <= a for a, b in zip(x, x[1:])):
                raise InvalidDataError(f"itemset {x} is not strictly increasing")

    @classmethod
    def of(cls, *itemsets: Iterable[int]) -> Pattern:
        return cls(tuple(tuple(sorted(x)) for x in itemsets))

    def __len__(self) -> int:
        """Total number of items (the ``|s|`` length)."""
        return sum(len(x) for x in self.itemsets)

    @property
    def size(self) -> int:
        """Number of itemsets."""
        return len(self.itemsets)

    @property
    def last_item(self) -> int | None:
        return self.itemsets[-1][-1] if self.itemsets else None

    @classmethod
    def _trusted(cls, itemsets: tuple[tuple[int, ...], ...]) -> Pattern:
        # skips __post_init__; callers guarantee canonical itemsets
        p = object.__new__(cls)
        object.__setattr__(p, "itemsets", itemsets)
        return p

    def i_extend(self, item: int) -> Pattern:
        if not self.itemsets:
            return Pattern._trusted(((item,),))
        last = self.itemsets[-1]
        if item <= last[-1]:
            raise InvalidDataError(f"I-extension item {item} must exceed {last[-1]}")
        return Pattern._trusted(self.itemsets[:-1] + (last + (item,),))

    def s_extend(self, item: int) -> Pattern:
        return Pattern._trusted(self.itemsets + ((item,),))

    def flat(self) -> list[int]:
        return [i for x in self.itemsets for i in x]

    def format(self, labels: Mapping[int, str] | None = None) -> str:
        """Render as ``a|c e|c`` (itemsets separated by ``|``)."""
        name = (lambda i: labels.get(i, str(i))) if labels else str
        return "|".join(" ".join(name(i) for i in x) for x in self.itemsets)

    def __str__(self) -> str:
        return "<" + ", ".join("{" + " ".join(map(str, x)) + "}" for x in self.itemsets) + ">"


def q_item_utility(item: int, j: int, seq: QSequence, utilities: UtilityTable) -> int:
    """Utility of ``item`` inside the ``j``-th (1-based) itemset of ``seq``."""
    return seq.itemset(j).quantity_of(item) * utilities[item]


def itemset_utility_at(x: Iterable[int], j: int, seq: QSequence, utilities: UtilityTable) -> int:
    return sum(q_item_utility(i, j, seq, utilities) for i in x)


def qsequence_utility(seq: QSequence, utilities: UtilityTable) -> int:
    return sum(qi.quantity * utilities[qi.item] for x in seq.itemsets for qi in x.items)


def database_utility(db: QDatabase) -> int:
    return sum(qsequence_utility(s, db.utilities) for s in db.sequences)
