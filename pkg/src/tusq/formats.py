"""Text formats: sequence data, utility tables, labels, targets and results.

Data lines hold ``item:qty`` tokens; ``-1`` closes an itemset and ``-2``
terminates the sequence, for example ``1:1 2:3 -1 3:1 5:2 -1 3:4 4:1 -2``.
Lines starting with ``#`` and blank lines are skipped.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Mapping
from os import PathLike
from pathlib import Path

from .errors import ParseError
from .miner import MiningStats, ResultSet
from .model import Pattern, QDatabase, QItemset, QSequence, UtilityTable

PathArg = str | PathLike[str]

ITEMSET_END = "-1"
SEQUENCE_END = "-2"


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _nonneg_int(token: str, what: str, line: int, path: str | None) -> int:
    if not token.isdigit():
        raise ParseError(f"{what} must be a non-negative integer, got {token!r}", line, path)
    return int(token)


def parse_sequence_line(line: str, sid: int, lineno: int = 1, path: str | None = None) -> QSequence:
    itemsets: list[QItemset] = []
    current: dict[int, int] = {}
    ended = False
    for tok in line.split():
        if ended:
            raise ParseError(f"token {tok!r} after end of sequence", lineno, path)
        if tok == ITEMSET_END:
            if not current:
                raise ParseError("empty itemset", lineno, path)
            itemsets.append(QItemset.of(current.items()))
            current = {}
        elif tok == SEQUENCE_END:
            if current:
                itemsets.append(QItemset.of(current.items()))
                current = {}
            ended = True
        else:
            item_s, sep, qty_s = tok.partition(":")
            if not sep:
                raise ParseError(f"expected item:qty, got {tok!r}", lineno, path)
            item = _nonneg_int(item_s, "item", lineno, path)
            qty = _nonneg_int(qty_s, "quantity", lineno, path)
            if qty == 0:
                raise ParseError(f"zero quantity for item {item}", lineno, path)
            if item in current:
                raise ParseError(f"duplicate item {item} in itemset", lineno, path)
            current[item] = qty
    if not ended:
        raise ParseError("missing -2 at end of sequence", lineno, path)
    if not itemsets:
        raise ParseError("empty sequence", lineno, path)
    return QSequence(sid, tuple(itemsets))


def parse_utilities_text(text: str, path: str | None = None) -> UtilityTable:
    profits: dict[int, int] = {}
    for no, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'item profit', got {line!r}", no, path)
        item = _nonneg_int(parts[0], "item", no, path)
        profit = _nonneg_int(parts[1], "profit", no, path)
        if item in profits:
            raise ParseError(f"duplicate utility entry for item {item}", no, path)
        profits[item] = profit
    return UtilityTable(profits)


def parse_database_text(data: str, utilities: str | UtilityTable, path: str | None = None) -> QDatabase:
    table = utilities if isinstance(utilities, UtilityTable) else parse_utilities_text(utilities)
    seqs = []
    for no, line in _content_lines(data):
        seq = parse_sequence_line(line, len(seqs) + 1, no, path)
        for x in seq.itemsets:
            for qi in x.items:
                if qi.item not in table:
                    raise ParseError(f"unknown item {qi.item} (absent from utility file)", no, path)
        seqs.append(seq)
    return QDatabase(tuple(seqs), table)


def parse_database(data_path: PathArg, utility_path: PathArg) -> QDatabase:
    """Read a database and its utility table; SIDs are 1..n in file order."""
    upath = str(utility_path)
    table = parse_utilities_text(Path(upath).read_text(), upath)
    dpath = str(data_path)
    return parse_database_text(Path(dpath).read_text(), table, dpath)


def parse_labels_text(text: str, path: str | None = None) -> dict[int, str]:
    labels: dict[int, str] = {}
    seen: set[str] = set()
    for no, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'item label', got {line!r}", no, path)
        item = _nonneg_int(parts[0], "item", no, path)
        if item in labels or parts[1] in seen:
            raise ParseError(f"duplicate label entry {line!r}", no, path)
        labels[item] = parts[1]
        seen.add(parts[1])
    return labels


def parse_labels(path: PathArg) -> dict[int, str]:
    return parse_labels_text(Path(path).read_text(), str(path))


def parse_target(spec: str, labels: Mapping[int, str] | None = None) -> Pattern:
    """Parse ``a -1 c e -1 c -2`` or ``a|c e|c``.

    Tokens are looked up in ``labels`` first and otherwise read as integers.
    """
    lookup = {v: k for k, v in (labels or {}).items()}

    def item_of(tok: str) -> int:
        if tok in lookup:
            return lookup[tok]
        if tok.isdigit():
            return int(tok)
        raise ParseError(f"unknown target item {tok!r}")

    groups: list[list[str]] = []
    if "|" in spec:
        for part in spec.split("|"):
            toks = part.split()
            if not toks:
                raise ParseError("empty itemset in target")
            groups.append(toks)
    else:
        current: list[str] = []
        toks = spec.split()
        for k, tok in enumerate(toks):
            if tok == ITEMSET_END:
                if not current:
                    raise ParseError("empty itemset in target")
                groups.append(current)
                current = []
            elif tok == SEQUENCE_END:
                if k != len(toks) - 1:
                    raise ParseError("tokens after -2 in target")
            else:
                current.append(tok)
        if current:
            groups.append(current)
    if not groups:
        raise ParseError("empty target")
    itemsets = []
    for toks in groups:
        items = [item_of(t) for t in toks]
        if len(set(items)) != len(items):
            raise ParseError(f"duplicate item in target itemset {' '.join(toks)!r}")
        itemsets.append(tuple(sorted(items)))
    return Pattern(tuple(itemsets))


def serialize_sequence(seq: QSequence) -> str:
    return f" {ITEMSET_END} ".join(" ".join(f"{qi.item}:{qi.quantity}" for qi in x) for x in seq.itemsets) + f" {SEQUENCE_END}"


def serialize_database(db: QDatabase) -> str:
    return "".join(serialize_sequence(s) + "\n" for s in db.sequences)


def serialize_utilities(table: Mapping[int, int]) -> str:
    return "".join(f"{i} {table[i]}\n" for i in sorted(table))


def serialize_labels(labels: Mapping[int, str]) -> str:
    return "".join(f"{i} {labels[i]}\n" for i in sorted(labels))


def serialize_target(pattern: Pattern, labels: Mapping[int, str] | None = None) -> str:
    """Token form of a pattern, ``1 -1 3 5 -1 3 -2``."""
    name = (lambda i: labels.get(i, str(i))) if labels else str
    return " ".join(" ".join(name(i) for i in x) + f" {ITEMSET_END}" for x in pattern.itemsets) + f" {SEQUENCE_END}"


def write_database(db: QDatabase, data_path: PathArg, utility_path: PathArg) -> None:
    Path(data_path).write_text(serialize_database(db))
    Path(utility_path).write_text(serialize_utilities(db.utilities))


def results_to_csv(results: ResultSet, labels: Mapping[int, str] | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pattern", "utility"])
    for p, u in results:
        w.writerow([p.format(labels), u])
    return buf.getvalue()


def results_to_json(results: ResultSet, labels: Mapping[int, str] | None = None) -> str:
    rows = [{"pattern": p.format(labels), "itemsets": [list(x) for x in p.itemsets], "utility": u} for p, u in results]
    return json.dumps({"results": rows}, indent=2) + "\n"


def results_from_csv(text: str, labels: Mapping[int, str] | None = None) -> ResultSet:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["pattern", "utility"]:
        raise ParseError(f"unexpected results header {header!r}")
    return ResultSet.from_pairs((parse_target(row[0], labels), int(row[1])) for row in reader if row)


def stats_to_json(stats: MiningStats) -> str:
    return json.dumps(stats.to_dict(), indent=2, sort_keys=True) + "\n"
