"""Exact rational linear algebra on top of the integer echelon kernel."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from ._core import Echelon


def integer_row(vec) -> tuple[list, list]:
    """Sparse primitive-denominator integer form of a rational vector."""
    den = 1
    for v in vec:
        if v:
            den = lcm(den, Fraction(v).denominator)
    cols, vals = [], []
    for k, v in enumerate(vec):
        if v:
            cols.append(k)
            vals.append(int(Fraction(v) * den))
    return cols, vals


def rank(vectors, length: int = None) -> int:
    """Rank of a family of rational vectors (rows or columns, same thing)."""
    vectors = list(vectors)
    if not vectors:
        return 0
    e = Echelon(length if length is not None else len(vectors[0]))
    for v in vectors:
        cols, vals = integer_row(v)
        if cols:
            e.add_row(cols, vals)
    return e.rank


def transpose(rows):
    rows = list(rows)
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def matmul(A, B):
    """Dense product of lists-of-rows."""
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col) if a and b) for col in Bt] for row in A]


def in_span(columns, candidates, length: int) -> bool:
    """True if every candidate vector lies in the span of ``columns``."""
    base = rank(columns, length)
    return rank(list(columns) + list(candidates), length) == base


def is_zero_matrix(A) -> bool:
    return all(not v for row in A for v in row)
