"""Consequences of the computation: the dual Stiefel-Whitney detector.

An n-manifold with Spin structure carries a nonzero dual Stiefel-Whitney
class in codimension n-2 exactly when n is a power of two at least 8; the
witness is the bottom class of an A summand, whose order is read off the
assembled chart.
"""
from __future__ import annotations

from dataclasses import dataclass

from .chart import group_at
from .summands import build_A


@dataclass(frozen=True)
class SWVerdict:
    n: int
    exists: bool
    witness: tuple | None = None   # (summand name, grading, order exponent)
    note: str = ""


def sw_predicate(n: int) -> SWVerdict:
    """Existence of an n-dimensional Spin manifold with nonzero dual
    Stiefel-Whitney class in codimension n-2."""
    if n < 1:
        raise ValueError("sw_predicate requires n >= 1")
    if n >= 8 and n & (n - 1) == 0:
        e = n.bit_length() - 1
        k = e - 1
        a = build_A(k, n + 1)
        orders = group_at(a, n)
        order = max(orders)
        return SWVerdict(n, True, (f"A_{k}", n, order))
    note = ""
    if n >= 9 and (n - 1) & (n - 2) == 0:
        note = ("adjacent to a 2-power: the candidate class supports a "
                "differential and dies")
    return SWVerdict(n, False, None, note)
