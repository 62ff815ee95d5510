"""Test-only fault injection used to measure the harness's sensitivity.

Known faults: ``hilbert_symbol`` (flips the symbol of every pair of
nontrivial classes) and ``norm_map`` (flips the u-bit of every class-level
norm N_{L/K} on nontrivial classes).
"""

from __future__ import annotations

import contextlib

KNOWN = ("hilbert_symbol", "norm_map")

_active: set[str] = set()


def active(name: str) -> bool:
    return name in _active


def state() -> tuple[str, ...]:
    """Hashable snapshot, used as part of memoization keys."""
    return tuple(sorted(_active))


@contextlib.contextmanager
def inject(name: str):
    if name not in KNOWN:
        raise ValueError(f"unknown fault {name!r}; known: {KNOWN}")
    _active.add(name)
    try:
        yield
    finally:
        _active.discard(name)
