"""Fraction-free sparse rank computation over the rationals.

Vectors are dicts keyed by arbitrary orderable basis labels.  Each row is
cleared to integers and gcd-reduced, and elimination uses integer cross
multiplication only, so no rounding can occur anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping


def _to_int_row(row: Mapping[Hashable, Fraction | int]) -> dict:
    out = {}
    denom = 1
    for k, v in row.items():
        v = Fraction(v)
        if v:
            out[k] = v
            denom = denom * v.denominator // gcd(denom, v.denominator)
    if not out:
        return {}
    ints = {k: int(v * denom) for k, v in out.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, abs(v))
    if g > 1:
        ints = {k: v // g for k, v in ints.items()}
    return ints


def _reduce(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def sparse_rank(rows: Iterable[Mapping[Hashable, Fraction | int]]) -> int:
    """Rank of the span of the given sparse vectors, exactly."""
    pivots: dict = {}  # leading label -> gcd-reduced integer row
    rank = 0
    for raw in rows:
        row = _to_int_row(raw)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _reduce(row)
                rank += 1
                break
            a, b = row[lead], piv[lead]
            g = gcd(abs(a), abs(b))
            fa, fb = b // g, a // g
            merged = {}
            for k in row.keys() | piv.keys():
                val = fa * row.get(k, 0) - fb * piv.get(k, 0)
                if val:
                    merged[k] = val
            row = _reduce(merged)
    return rank
