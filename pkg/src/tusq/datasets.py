"""The bundled five-sequence example and a synthetic database generator."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .formats import parse_database_text, parse_labels_text, parse_target
from .model import Pattern, QDatabase, QItemset, QItem, QSequence, UtilityTable

RUNNING_TARGET = "a|c e|c"


@dataclass(frozen=True)
class Example:
    database: QDatabase
    target: Pattern
    labels: dict[int, str]


def _data_text(name: str) -> str:
    return resources.files("tusq").joinpath("data", name).read_text()


def running_example_path(kind: str) -> str:
    """Filesystem path of the bundled ``data``, ``utils`` or ``labels`` file."""
    return str(resources.files("tusq").joinpath("data", f"running_example_{kind}.txt"))


def running_example() -> Example:
    labels = parse_labels_text(_data_text("running_example_labels.txt"))
    db = parse_database_text(_data_text("running_example_data.txt"), _data_text("running_example_utils.txt"))
    return Example(db, parse_target(RUNNING_TARGET, labels), labels)


@dataclass(frozen=True)
class SyntheticSpec:
    num_sequences: int
    alphabet_size: int
    avg_itemsets: float
    avg_items_per_itemset: float
    max_qty: int = 5
    max_profit: int = 10
    max_itemsets: int | None = None
    item_skew: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("num_sequences", "alphabet_size", "max_qty", "max_profit"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.avg_itemsets < 1 or self.avg_items_per_itemset < 1:
            raise ValueError("averages must be at least 1")
        if self.max_itemsets is not None and self.max_itemsets < 1:
            raise ValueError("max_itemsets must be positive")
        if self.item_skew < 0:
            raise ValueError("item_skew must be non-negative")


SYN40K = SyntheticSpec(40000, 7584, 6.19, 4.32, max_itemsets=18)


def _clipped_geometric(rng: np.random.Generator, mean: float, upper: int, size: int) -> np.ndarray:
    return np.minimum(rng.geometric(1.0 / mean, size=size), upper)


def generate_synthetic(spec: SyntheticSpec) -> QDatabase:
    """Draw a database; items are ``1..alphabet_size``.

    Itemset counts and sizes follow geometric distributions with the given
    means, clipped to ``max_itemsets`` and the alphabet size. With
    ``item_skew > 0`` items are drawn with weight ``rank ** -item_skew``.
    """
    rng = np.random.default_rng(spec.seed)
    n_alpha = spec.alphabet_size
    profits = rng.integers(1, spec.max_profit + 1, size=n_alpha)
    cdf = None
    if spec.item_skew > 0:
        w = np.arange(1, n_alpha + 1, dtype=float) ** -spec.item_skew
        cdf = np.cumsum(w / w.sum())
    upper = spec.max_itemsets or np.iinfo(np.int64).max
    counts = _clipped_geometric(rng, spec.avg_itemsets, upper, spec.num_sequences)
    seqs = []
    for sid, m in enumerate(counts.tolist(), start=1):
        sizes = _clipped_geometric(rng, spec.avg_items_per_itemset, n_alpha, m).tolist()
        itemsets = []
        for k in sizes:
            if cdf is None:
                items = rng.choice(n_alpha, size=k, replace=False) if k * 4 > n_alpha else _distinct(rng, n_alpha, k)
            else:
                items = _distinct_weighted(rng, cdf, k)
            items = np.sort(np.asarray(items)) + 1
            qty = rng.integers(1, spec.max_qty + 1, size=k)
            itemsets.append(QItemset(tuple(QItem(int(i), int(q)) for i, q in zip(items, qty))))
        seqs.append(QSequence(sid, tuple(itemsets)))
    table = UtilityTable({i + 1: int(p) for i, p in enumerate(profits)})
    return QDatabase(tuple(seqs), table)


def _distinct(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    got = np.unique(rng.integers(0, n, size=k))
    while got.size < k:
        got = np.unique(np.concatenate((got, rng.integers(0, n, size=k - got.size))))
    return got


def _distinct_weighted(rng: np.random.Generator, cdf: np.ndarray, k: int) -> np.ndarray:
    n = cdf.size
    if k >= n:
        return np.arange(n)
    got = np.empty(0, np.int64)
    while got.size < k:
        draw = np.minimum(np.searchsorted(cdf, rng.random(2 * k)), n - 1)
        _, first = np.unique(np.concatenate((got, draw)), return_index=True)
        merged = np.concatenate((got, draw))[np.sort(first)]
        got = merged[:k]
    return got
