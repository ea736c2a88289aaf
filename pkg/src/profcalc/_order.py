"""Canonical total order on identifiers.

Identifiers are ints, strings, or (nested) tuples of those. Every search in
the package iterates in this order so results are reproducible.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Any, Iterable


@lru_cache(maxsize=None)
def ckey(x: Any) -> tuple:
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(ckey(e) for e in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(ckey(e) for e in x)))
    raise TypeError(f"unsupported identifier {x!r}")


def csorted(xs: Iterable) -> tuple:
    return tuple(sorted(xs, key=ckey))


def cmin(xs: Iterable):
    return min(xs, key=ckey)


def freeze(x: Any) -> Any:
    """Turn JSON lists into tuples, recursively."""
    if isinstance(x, list):
        return tuple(freeze(e) for e in x)
    return x


def thaw(x: Any) -> Any:
    """Turn tuples into lists, recursively, for JSON output."""
    if isinstance(x, (tuple, list)):
        return [thaw(e) for e in x]
    if isinstance(x, frozenset):
        return [thaw(e) for e in csorted(x)]
    return x
