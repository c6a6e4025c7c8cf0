"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Elimination runs on integer rows
(denominators cleared per row) using Bareiss' fraction-free forward pass,
followed by a content-reduced back substitution, so intermediate values stay
integral and small.  Only the final reduced echelon form is converted back to
fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "RatMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "mat_vec",
    "to_fraction",
]


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused so that nothing inexact leaks into a computation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class RatMatrix:
    """Immutable dense matrix of Fractions stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(to_fraction(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        if len(entries) != rows * cols:
            raise ValueError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def _integer_rows(m: RatMatrix) -> list[list[int]]:
    out = []
    for i in range(m.rows):
        row = m.row(i)
        den = 1
        for e in row:
            if e.denominator != 1:
                den = lcm(den, e.denominator)
        out.append([e.numerator * (den // e.denominator) for e in row])
    return out


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for e in row:
        if e:
            g = gcd(g, e)
            if g == 1:
                return row
    if g > 1:
        return [e // g for e in row]
    return row


def _echelon(a: list[list[int]], ncols: int) -> list[int]:
    """Bareiss forward elimination in place; returns pivot columns.

    Entries below each pivot become zero and every surviving entry is a minor
    of the input, so the division by the previous pivot is exact.
    """
    nrows = len(a)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # smallest nonzero magnitude keeps numbers short; rref is unique anyway
        best = -1
        for i in range(r, nrows):
            v = a[i][c]
            if v and (best < 0 or abs(v) < abs(a[best][c])):
                best = i
        if best < 0:
            continue
        if best != r:
            a[r], a[best] = a[best], a[r]
        prow = a[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def _reduce(a: list[list[int]], pivots: list[int], ncols: int) -> list[list[Fraction]]:
    """Back-substitute the echelon rows into reduced form with unit pivots."""
    rank = len(pivots)
    rows = [_primitive(a[k]) for k in range(rank)]
    for k in range(rank - 1, -1, -1):
        c = pivots[k]
        prow = rows[k]
        p = prow[c]
        for i in range(k):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = _primitive([p * x - f * y for x, y in zip(row, prow)])
    out = []
    for k in range(rank):
        row = rows[k]
        p = row[pivots[k]]
        out.append([Fraction(x, p) if x else Fraction(0) for x in row])
    return out


def _rref_rows(m: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    if m.rows == 0 or m.cols == 0:
        return [], []
    a = _integer_rows(m)
    pivots = _echelon(a, m.cols)
    return _reduce(a, pivots, m.cols), pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``.

    The returned matrix has the same shape as ``m``; zero rows sit at the
    bottom.

    >>> r, k, piv = rref(RatMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]]))
    >>> k, piv
    (2, [0, 1])
    """
    reduced, pivots = _rref_rows(m)
    zero_rows = [[0] * m.cols for _ in range(m.rows - len(reduced))]
    return RatMatrix.from_rows(reduced + zero_rows, m.cols), len(pivots), pivots


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    a = _integer_rows(m)
    return len(_echelon(a, m.cols))


def kernel_basis(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Right null space of ``m``, one vector per free column.

    Each vector has a 1 in its free column, 0 in the other free columns, and
    pivot coordinates read off the reduced echelon form.  Vectors are ordered
    by free column.
    """
    reduced, pivots = _rref_rows(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for k, c in enumerate(pivots):
            e = reduced[k][f]
            if e:
                v[c] = -e
        basis.append(tuple(v))
    return basis


def solve(m: RatMatrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``m @ v == rhs`` or None if the system is inconsistent.

    Free variables are set to zero.
    """
    rhs = [to_fraction(x) for x in rhs]
    if len(rhs) != m.rows:
        raise ValueError(f"right-hand side has length {len(rhs)}, matrix has {m.rows} rows")
    aug = RatMatrix.from_rows(
        [list(m.row(i)) + [rhs[i]] for i in range(m.rows)], m.cols + 1
    )
    reduced, pivots = _rref_rows(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    v = [Fraction(0)] * m.cols
    for k, c in enumerate(pivots):
        v[c] = reduced[k][m.cols]
    return tuple(v)


def mat_vec(m: RatMatrix, v: Sequence) -> tuple[Fraction, ...]:
    if len(v) != m.cols:
        raise ValueError("vector length does not match column count")
    v = [to_fraction(x) for x in v]
    return tuple(
        sum((e * x for e, x in zip(m.row(i), v) if e and x), Fraction(0))
        for i in range(m.rows)
    )
