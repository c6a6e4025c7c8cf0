"""Quotient-level constructions for SL(2) acting diagonally on (P^1)^n.

The line bundle is ``L = O(d_1) x ... x O(d_n)``; degree-``k`` sections of
``L`` are polynomials of multidegree ``k * d_vec``.  Shifting by a character
``chi`` with denominator ``n`` selects, in degree ``n*k``, the U-invariants of
torus weight ``k*chi``.  The flag-variety side adds one extra pair (the
``G/B = P^1`` factor) of degree ``k*chi`` and takes full SL(2)-invariants.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactlin import RatMatrix, rank, solve
from .polyring import Polynomial, check_point, format_rational
from .sl2rep import BasisCache, g_inv_basis, multiplicity, raising, u_inv_basis

__all__ = [
    "Config",
    "DeltaData",
    "Semistable",
    "NoSectionUpTo",
    "CorrespondenceReport",
    "WallWarning",
    "delta_interval",
    "delta_points",
    "walls",
    "on_wall",
    "flag_multidegree",
    "hilbert_uH",
    "hilbert_flag",
    "rho",
    "extend",
    "u_semistable",
    "b_semistable",
    "is_dominant",
    "phi",
    "unipotent_act",
    "verify_correspondence",
]


class WallWarning(UserWarning):
    """The shift point chi/n lies on a wall."""


def delta_interval(d_vec: Sequence[int]) -> tuple[Fraction, Fraction]:
    total = sum(d_vec)
    return Fraction(max(0, 2 * max(d_vec) - total)), Fraction(total)


def walls(d_vec: Sequence[int]) -> list[int]:
    """Values ``|sum_S d_i - sum_{not S} d_i|`` that fall in the interval."""
    lo, hi = delta_interval(d_vec)
    total = sum(d_vec)
    vals = set()
    for signs in product((1, -1), repeat=len(d_vec)):
        s = sum(e * d for e, d in zip(signs, d_vec))
        vals.add(abs(s))
    return sorted(v for v in vals if lo <= v <= hi and v <= total)


@dataclass(frozen=True)
class Config:
    d_vec: tuple[int, ...]
    chi: int = 0
    nden: int = 1
    dmax: int = 1

    def __post_init__(self):
        d_vec = tuple(self.d_vec)
        object.__setattr__(self, "d_vec", d_vec)
        if not d_vec:
            raise ValueError("d_vec must be nonempty")
        if any(not isinstance(d, int) or d < 1 for d in d_vec):
            raise ValueError(f"d_vec entries must be positive integers, got {d_vec}")
        if self.chi < 0:
            raise ValueError("chi must be non-negative")
        if self.nden < 1:
            raise ValueError("n must be a positive integer")
        if self.dmax < 0:
            raise ValueError("dmax must be non-negative")
        if self.chi > 0:
            lo, hi = delta_interval(d_vec)
            if not lo <= self.shift <= hi:
                raise ValueError(
                    f"chi/n = {format_rational(self.shift)} lies outside "
                    f"[{format_rational(lo)}, {format_rational(hi)}]"
                )

    @property
    def n(self) -> int:
        return len(self.d_vec)

    @property
    def shift(self) -> Fraction:
        return Fraction(self.chi, self.nden)

    def multidegree(self, d: int) -> tuple[int, ...]:
        """Multidegree of ``H^0(X, L^(n*d))``."""
        return tuple(self.nden * d * di for di in self.d_vec)

    def to_json_obj(self) -> dict:
        return {"degrees": list(self.d_vec), "chi": self.chi, "n": self.nden, "dmax": self.dmax}


def on_wall(cfg: Config) -> bool:
    return cfg.shift in {Fraction(w) for w in walls(cfg.d_vec)}


@dataclass(frozen=True)
class DeltaData:
    points: tuple[Fraction, ...]
    lo: Fraction
    hi: Fraction


def delta_points(cfg: Config) -> DeltaData:
    """Rational points ``tau/k`` with a nonzero isotypic piece, ``1 <= k <= dmax``."""
    if cfg.dmax < 1:
        raise ValueError("dmax must be at least 1")
    pts = set()
    for k in range(1, cfg.dmax + 1):
        m = tuple(k * di for di in cfg.d_vec)
        for tau in range(sum(m) + 1):
            if multiplicity(m, tau) > 0:
                pts.add(Fraction(tau, k))
    lo, hi = delta_interval(cfg.d_vec)
    return DeltaData(tuple(sorted(pts)), lo, hi)


def hilbert_uH(cfg: Config) -> tuple[int, ...]:
    """Graded dimensions of the shifted torus quotient ring of ``R^U``.

    Entry ``d`` is the multiplicity of highest weight ``d*chi`` in degree
    ``n*d``.  The same numbers are the graded dimensions of the shifted
    B-invariant ring.
    """
    return tuple(multiplicity(cfg.multidegree(d), d * cfg.chi) for d in range(cfg.dmax + 1))


def flag_multidegree(cfg: Config, d: int) -> tuple[int, ...]:
    return cfg.multidegree(d) + (d * cfg.chi,)


def hilbert_flag(cfg: Config, cache: BasisCache | None = None) -> tuple[int, ...]:
    """Graded dimensions of the G-invariants on ``X x P^1``, by kernel rank."""
    return tuple(len(g_inv_basis(flag_multidegree(cfg, d), cache)) for d in range(cfg.dmax + 1))


def rho(s: Polynomial, cfg: Config, d: int) -> Polynomial:
    """Restrict a section on ``X x P^1`` to ``X x {[1:0]}``.

    Setting the flag coordinates to ``alpha = 1, beta = 0`` keeps the terms
    without a flag beta and drops the last pair.
    """
    expected = flag_multidegree(cfg, d)
    if s.m != expected:
        raise ValueError(f"expected multidegree {expected}, got {s.m}")
    terms = {q[:-1]: c for q, c in s.terms.items() if q[-1] == 0}
    return Polynomial._raw(s.m[:-1], terms)


def extend(s: Polynomial, cfg: Config, d: int, cache: BasisCache | None = None) -> Polynomial:
    """Unique G-invariant section on ``X x P^1`` whose restriction is ``s``."""
    m = cfg.multidegree(d)
    if s.m != m:
        raise ValueError(f"expected multidegree {m}, got {s.m}")
    ext_m = flag_multidegree(cfg, d)
    basis = g_inv_basis(ext_m, cache)
    images = [rho(g, cfg, d) for g in basis]
    monos = sorted({q for p in images + [s] for q in p.terms})
    if not monos:
        return Polynomial(ext_m)
    mat = RatMatrix.from_rows(
        [[p.terms.get(q, 0) for p in images] for q in monos], len(images)
    )
    coeffs = solve(mat, [s.terms.get(q, 0) for q in monos])
    if coeffs is None:
        raise ValueError("section is not a U-invariant of weight d*chi; cannot extend")
    out = Polynomial(ext_m)
    for c, g in zip(coeffs, basis):
        if c:
            out = out + g.scale(c)
    return out


@dataclass(frozen=True)
class Semistable:
    degree: int
    weight: int
    witness: Polynomial
    value: Fraction

    def to_json_obj(self) -> dict:
        return {
            "verdict": "Semistable",
            "degree": self.degree,
            "weight": self.weight,
            "value": format_rational(self.value),
            "witness": self.witness.to_json_obj(),
        }


@dataclass(frozen=True)
class NoSectionUpTo:
    """No invariant section up to ``bound`` is nonzero at the point.

    This is a bounded search result, not a proof of instability.
    """

    bound: int

    def to_json_obj(self) -> dict:
        return {"verdict": "NoSectionUpTo", "bound": self.bound}


def _first_nonvanishing(polys, x):
    for p in polys:
        v = p.eval(x)
        if v:
            return p, v
    return None


def u_semistable(x, cfg: Config, dbound: int, cache: BasisCache | None = None):
    """Search ``R_d^U`` for ``d = 1..dbound`` for a section not vanishing at ``x``.

    Weights are scanned in increasing order within each degree.  ``chi`` and
    ``nden`` are not used.
    """
    x = check_point(x)
    if len(x) != cfg.n:
        raise ValueError(f"point has {len(x)} pairs, configuration has {cfg.n}")
    for d in range(1, dbound + 1):
        m = tuple(d * di for di in cfg.d_vec)
        for tau in range(sum(m) % 2, sum(m) + 1, 2):
            if multiplicity(m, tau) == 0:
                continue
            hit = _first_nonvanishing(u_inv_basis(m, tau, cache), x)
            if hit:
                return Semistable(d, tau, hit[0], hit[1])
    return NoSectionUpTo(dbound)


def b_semistable(x, cfg: Config, dbound: int, cache: BasisCache | None = None):
    """Same search over the chi-shifted B-invariants in degrees ``n*d``."""
    x = check_point(x)
    if len(x) != cfg.n:
        raise ValueError(f"point has {len(x)} pairs, configuration has {cfg.n}")
    for d in range(1, dbound + 1):
        m = cfg.multidegree(d)
        tau = d * cfg.chi
        if multiplicity(m, tau) == 0:
            continue
        hit = _first_nonvanishing(u_inv_basis(m, tau, cache), x)
        if hit:
            return Semistable(d, tau, hit[0], hit[1])
    return NoSectionUpTo(dbound)


def is_dominant(d_vec: Sequence[int]) -> bool:
    """Last factor outweighs all others together."""
    return len(d_vec) >= 2 and d_vec[-1] > sum(d_vec[:-1])


def _as_pair(r: Fraction) -> tuple[int, int]:
    return (r.numerator, r.denominator)


def phi(x, cfg: Config) -> tuple[tuple[int, int], ...]:
    """Quotient map of the U-semistable locus onto ``(P^1)^(n-1)``.

    Columns ``[1:0]`` are kept.  The remaining affine coordinates, followed
    by the last one, are replaced by consecutive differences and the last
    column is dropped.
    """
    if not is_dominant(cfg.d_vec):
        raise ValueError("phi needs d_n > d_1 + ... + d_(n-1)")
    x = check_point(x)
    if len(x) != cfg.n:
        raise ValueError(f"point has {len(x)} pairs, configuration has {cfg.n}")
    if x[-1][1] == 0:
        raise ValueError("last coordinate is [1:0]; the point is not U-semistable")
    affine = [None if b == 0 else Fraction(a, b) for a, b in x]
    finite = [i for i in range(cfg.n - 1) if affine[i] is not None] + [cfg.n - 1]
    out: list[tuple[int, int]] = [(1, 0)] * (cfg.n - 1)
    for j, i in enumerate(finite[:-1]):
        out[i] = _as_pair(affine[i] - affine[finite[j + 1]])
    return tuple(out)


def unipotent_act(t, x):
    """``[a:b] -> [a + t*b : b]`` on every factor."""
    return tuple((a + t * b, b) for a, b in x)


@dataclass
class CorrespondenceReport:
    config: Config
    hilbert_uH: tuple[int, ...]
    hilbert_flag: tuple[int, ...]
    rho_ranks: list[tuple[int, int, int]]
    passed: bool
    warnings: list[str] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        out = {
            "config": self.config.to_json_obj(),
            "hilbert_uH": list(self.hilbert_uH),
            "hilbert_flag": list(self.hilbert_flag),
            "rho_ranks": [list(r) for r in self.rho_ranks],
            "pass": self.passed,
        }
        if self.warnings:
            out["warning"] = ",".join(self.warnings)
        return out


def verify_correspondence(cfg: Config, cache: BasisCache | None = None) -> CorrespondenceReport:
    """Compare the torus-side and flag-side invariant rings degree by degree.

    Passes when, for every ``d <= dmax``, the two Hilbert functions agree and
    restriction to the base point maps the flag-side invariants injectively
    into U-invariants of weight ``d*chi``.
    """
    notes = []
    if on_wall(cfg):
        notes.append("wall")
        warnings.warn(
            f"chi/n = {format_rational(cfg.shift)} lies on a wall of {cfg.d_vec}",
            WallWarning,
            stacklevel=2,
        )
    h_u = hilbert_uH(cfg)
    h_f = hilbert_flag(cfg, cache)
    ranks = []
    ok = h_u == h_f
    for d in range(cfg.dmax + 1):
        basis = g_inv_basis(flag_multidegree(cfg, d), cache)
        images = [rho(g, cfg, d) for g in basis]
        for img in images:
            if raising(img) or not img.weights() <= {d * cfg.chi}:
                ok = False
        monos = sorted({q for p in images for q in p.terms})
        r = rank(RatMatrix.from_rows([[p.terms.get(q, 0) for p in images] for q in monos], len(images))) if monos else 0
        ranks.append((r, h_f[d], h_u[d]))
        if not r == h_f[d] == h_u[d]:
            ok = False
    return CorrespondenceReport(cfg, h_u, h_f, ranks, ok, notes)
