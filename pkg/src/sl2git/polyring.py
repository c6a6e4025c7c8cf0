"""Multihomogeneous polynomials in coordinate pairs (alpha_i, beta_i).

A polynomial of multidegree ``m = (m_1, ..., m_n)`` is a section of
``O(m_1) x ... x O(m_n)`` on ``(P^1)^n``.  A monomial is identified by its
beta-exponent vector ``q``; the alpha-exponent of pair ``i`` is ``m_i - q_i``.

Conventions: ``alpha_i([a:b]) = a`` and ``beta_i([a:b]) = b``.  The torus
weight of a monomial is ``sum(2*q_i - m_i)``, so ``beta`` is the
highest-weight vector of ``O(1)``.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import lcm, prod
from typing import Iterable, Mapping, NamedTuple, Sequence

from .exactlin import to_fraction

__all__ = [
    "Monomial",
    "Polynomial",
    "basis",
    "weight",
    "check_multidegree",
    "alpha",
    "beta",
    "omega",
    "constant",
    "parse_points",
    "format_point",
    "format_rational",
    "check_point",
]


def check_multidegree(m: Sequence[int]) -> tuple[int, ...]:
    m = tuple(m)
    if len(m) < 1:
        raise ValueError("multidegree must have at least one entry")
    for e in m:
        if not isinstance(e, int) or isinstance(e, bool) or e < 0:
            raise ValueError(f"multidegree entries must be non-negative ints, got {m!r}")
    return m


class Monomial(NamedTuple):
    """Monomial ``prod alpha_i^(m_i - q_i) beta_i^q_i``."""

    m: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def weight(self) -> int:
        return weight(self)


def weight(mono: Monomial) -> int:
    return sum(2 * qi - mi for qi, mi in zip(mono.q, mono.m))


def basis(m: Sequence[int]) -> list[Monomial]:
    """All monomials of multidegree ``m`` in lexicographic order of ``q``."""
    m = check_multidegree(m)
    return [Monomial(m, q) for q in itertools.product(*(range(mi + 1) for mi in m))]


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Sparse polynomial of fixed multidegree with Fraction coefficients.

    Instances are immutable.  ``terms`` maps beta-exponent tuples to nonzero
    coefficients and iterates in lexicographic order.
    """

    __slots__ = ("m", "terms", "_hash")

    def __init__(self, m: Sequence[int], terms: Mapping | Iterable = ()):
        m = check_multidegree(m)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        for q, c in items:
            q = tuple(q)
            if len(q) != len(m) or any(not 0 <= qi <= mi for qi, mi in zip(q, m)):
                raise ValueError(f"monomial {q} does not fit multidegree {m}")
            acc[q] = acc.get(q, Fraction(0)) + to_fraction(c)
        object.__setattr__(self, "m", m)
        object.__setattr__(
            self, "terms", {q: acc[q] for q in sorted(acc) if acc[q]}
        )
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, m: tuple[int, ...], terms: dict) -> "Polynomial":
        # trusted constructor: terms already validated, nonzero, any order
        p = object.__new__(cls)
        object.__setattr__(p, "m", m)
        object.__setattr__(p, "terms", {q: terms[q] for q in sorted(terms)})
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def n(self) -> int:
        return len(self.m)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.m, tuple(self.terms.items()))))
        return self._hash

    def _check_same(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError("expected a Polynomial")
        if self.m != other.m:
            raise ValueError(f"multidegree mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same(other)
        out = dict(self.terms)
        for q, c in other.terms.items():
            s = out.get(q, 0) + c
            if s:
                out[q] = s
            else:
                out.pop(q, None)
        return Polynomial._raw(self.m, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.m, {q: -c for q, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = to_fraction(c)
        if not c:
            return Polynomial._raw(self.m, {})
        return Polynomial._raw(self.m, {q: c * v for q, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError("cannot multiply polynomials on different numbers of pairs")
        m = tuple(a + b for a, b in zip(self.m, other.m))
        out: dict[tuple[int, ...], Fraction] = {}
        for q1, c1 in self.terms.items():
            for q2, c2 in other.terms.items():
                q = tuple(a + b for a, b in zip(q1, q2))
                out[q] = out.get(q, 0) + c1 * c2
        return Polynomial._raw(m, {q: c for q, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = constant(self.n)
        for _ in range(k):
            result = result * self
        return result

    def eval(self, x: Sequence[tuple[int, int]]) -> Fraction:
        """Substitute ``alpha_i -> a_i`` and ``beta_i -> b_i``."""
        if len(x) != self.n:
            raise ValueError(f"point has {len(x)} pairs, polynomial has {self.n}")
        total = Fraction(0)
        for q, c in self.terms.items():
            v = c
            for (a, b), qi, mi in zip(x, q, self.m):
                v *= a ** (mi - qi) * b ** qi
                if not v:
                    break
            total += v
        return total

    def weights(self) -> set[int]:
        return {sum(2 * qi - mi for qi, mi in zip(q, self.m)) for q in self.terms}

    def to_json_obj(self) -> dict:
        return {
            "m": list(self.m),
            "terms": [{"q": list(q), "c": format_rational(c)} for q, c in self.terms.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Polynomial":
        return cls(obj["m"], [(t["q"], Fraction(t["c"])) for t in obj["terms"]])

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        return cls.from_json_obj(json.loads(text))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for q, c in self.terms.items():
            factors = []
            for i, (qi, mi) in enumerate(zip(q, self.m), start=1):
                for name, e in (("a", mi - qi), ("b", qi)):
                    if e == 1:
                        factors.append(f"{name}{i}")
                    elif e > 1:
                        factors.append(f"{name}{i}^{e}")
            mono = "*".join(factors)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial(m={self.m}, {self})"


def _unit(n: int, i: int, k: int = 1) -> tuple[int, ...]:
    return tuple(k if j == i else 0 for j in range(n))


def constant(n: int, c=1) -> Polynomial:
    zero = (0,) * n
    return Polynomial(zero, {zero: c})


def alpha(i: int, n: int) -> Polynomial:
    """``alpha_i`` (0-based pair index) on ``n`` pairs."""
    return Polynomial(_unit(n, i), {(0,) * n: 1})


def beta(i: int, n: int) -> Polynomial:
    return Polynomial(_unit(n, i), {_unit(n, i): 1})


def omega(j: int, k: int, n: int) -> Polynomial:
    """Bracket ``alpha_j beta_k - beta_j alpha_k``."""
    return alpha(j, n) * beta(k, n) - beta(j, n) * alpha(k, n)


def check_point(x: Sequence[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    pts = []
    for pair in x:
        a, b = pair
        if any(isinstance(v, bool) or not isinstance(v, int) for v in (a, b)):
            raise ValueError("point coordinates must be integers")
        if a == 0 and b == 0:
            raise ValueError("[0:0] is not a point of P^1")
        pts.append((a, b))
    if not pts:
        raise ValueError("empty point tuple")
    return tuple(pts)


def parse_points(text: str) -> tuple[tuple[int, int], ...]:
    """Parse ``"a1:b1,a2:b2,..."``; rational entries are scaled to integers.

    >>> parse_points("1/2:1,3:0")
    ((1, 2), (3, 0))
    """
    pts = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        try:
            a_text, b_text = chunk.split(":")
            a, b = Fraction(a_text.strip()), Fraction(b_text.strip())
        except ValueError:
            raise ValueError(f"malformed point {chunk!r}, expected a:b") from None
        den = lcm(a.denominator, b.denominator)
        pts.append((int(a * den), int(b * den)))
    return check_point(pts)


def format_point(x: Sequence[tuple[int, int]]) -> list[str]:
    return [f"{a}:{b}" for a, b in x]


def dimension(m: Sequence[int]) -> int:
    return prod(mi + 1 for mi in check_multidegree(m))
