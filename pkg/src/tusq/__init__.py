"""Mine high-utility sequential patterns that contain a given target sequence."""

from __future__ import annotations

from .chains import ChainSpace, Extension, TargetedChain, build_qmatrix, pattern_utility, sru_of, tdu_of
from .errors import (
    ExtensionError,
    InvalidDataError,
    ItemNotPresentError,
    ParseError,
    TargetAbsentError,
    TusqError,
    UnknownItemError,
)
from .matching import (
    build_li_table,
    contains,
    extension_positions,
    find_instances,
    is_promising,
    last_instance,
    longest_prefix_state,
    rest_sequence,
)
from .miner import MiningConfig, MiningStats, ResultSet, dpp_filter, mine, parse_xi, pattern_growth
from .model import Pattern, QDatabase, QItem, QItemset, QSequence, UtilityTable, database_utility

__all__ = [
    "ChainSpace",
    "Extension",
    "ExtensionError",
    "InvalidDataError",
    "ItemNotPresentError",
    "MiningConfig",
    "MiningStats",
    "ParseError",
    "Pattern",
    "QDatabase",
    "QItem",
    "QItemset",
    "QSequence",
    "ResultSet",
    "TargetAbsentError",
    "TargetedChain",
    "TusqError",
    "UnknownItemError",
    "UtilityTable",
    "build_li_table",
    "build_qmatrix",
    "contains",
    "database_utility",
    "dpp_filter",
    "extension_positions",
    "find_instances",
    "is_promising",
    "last_instance",
    "longest_prefix_state",
    "mine",
    "parse_xi",
    "pattern_growth",
    "pattern_utility",
    "rest_sequence",
    "sru_of",
    "tdu_of",
]
