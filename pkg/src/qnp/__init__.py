"""Exact quadratic-form and norm-principle computations over Laurent towers."""

from __future__ import annotations

__version__ = "0.1.0"
