"""Frequent positive and negative sequential patterns with gap constraints."""

from ._core import (  # noqa: F401
    ConfigError,
    Database,
    Error,
    IoError,
    MiningResult,
    OverflowError,
    ParseError,
    mine,
    ofs_total,
    support,
)

__all__ = [
    "ConfigError",
    "Database",
    "Error",
    "IoError",
    "MiningResult",
    "OverflowError",
    "ParseError",
    "mine",
    "ofs_total",
    "support",
]
