"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class TusqError(Exception):
    """Base class for every error raised by this package."""


class ItemNotPresentError(TusqError, KeyError):
    """An item was looked up in an itemset that does not hold it."""


class UnknownItemError(TusqError, KeyError):
    """An item has no entry in the utility table."""


class InvalidDataError(TusqError, ValueError):
    """A domain object violates one of its construction invariants."""


class TargetAbsentError(TusqError):
    """No sequence of the database contains the target."""


class ExtensionError(TusqError, ValueError):
    """An I-extension was requested with an item that breaks canonical order."""


class ParseError(TusqError, ValueError):
    """Malformed input file or target string.

    ``line`` is the 1-based line number when the error comes from a file.
    """

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)
