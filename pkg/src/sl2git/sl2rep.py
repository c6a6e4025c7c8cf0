"""sl2 operators on multihomogeneous polynomials.

Raising ``E = sum beta_i d/d alpha_i`` and lowering ``F = sum alpha_i d/d beta_i``
satisfy ``[E, F] = H`` with ``H`` the weight operator.  U-invariant sections
are the kernel of ``E``; their dimension in each weight is predicted
independently by counting weights.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Protocol, Sequence

from .exactlin import RatMatrix, kernel_basis
from .polyring import Polynomial, check_multidegree

__all__ = [
    "WeightBlock",
    "raising",
    "lowering",
    "weight_operator",
    "weight_dims",
    "weight_dim",
    "multiplicity",
    "weight_block",
    "raising_matrix",
    "u_inv_basis",
    "g_inv_basis",
    "BasisCache",
]


class BasisCache(Protocol):
    def get(self, m: tuple[int, ...], tau: int) -> list[Polynomial] | None: ...

    def put(self, m: tuple[int, ...], tau: int, polys: list[Polynomial]) -> None: ...


def raising(p: Polynomial) -> Polynomial:
    out: dict[tuple[int, ...], Fraction] = {}
    for q, c in p.terms.items():
        for i, (qi, mi) in enumerate(zip(q, p.m)):
            if qi < mi:
                r = q[:i] + (qi + 1,) + q[i + 1:]
                out[r] = out.get(r, 0) + c * (mi - qi)
    return Polynomial._raw(p.m, {q: c for q, c in out.items() if c})


def lowering(p: Polynomial) -> Polynomial:
    out: dict[tuple[int, ...], Fraction] = {}
    for q, c in p.terms.items():
        for i, qi in enumerate(q):
            if qi > 0:
                r = q[:i] + (qi - 1,) + q[i + 1:]
                out[r] = out.get(r, 0) + c * qi
    return Polynomial._raw(p.m, {q: c for q, c in out.items() if c})


def weight_operator(p: Polynomial) -> Polynomial:
    out = {}
    for q, c in p.terms.items():
        w = sum(2 * qi - mi for qi, mi in zip(q, p.m))
        if w:
            out[q] = c * w
    return Polynomial._raw(p.m, out)


def weight_dims(m: Sequence[int]) -> list[int]:
    """Coefficients of ``prod (1 + z + ... + z^m_i)``.

    Entry ``k`` counts monomials with ``sum(q) == k``, i.e. weight
    ``2k - sum(m)``.
    """
    coeffs = [1]
    for mi in check_multidegree(m):
        new = [0] * (len(coeffs) + mi)
        for k, c in enumerate(coeffs):
            for j in range(mi + 1):
                new[k + j] += c
        coeffs = new
    return coeffs


def weight_dim(m: Sequence[int], w: int) -> int:
    total = sum(m)
    if (w + total) % 2:
        return 0
    k = (w + total) // 2
    coeffs = weight_dims(m)
    return coeffs[k] if 0 <= k < len(coeffs) else 0


def multiplicity(m: Sequence[int], tau: int) -> int:
    """Number of copies of the irreducible of highest weight ``tau``."""
    if tau < 0 or (tau - sum(m)) % 2:
        return 0
    return weight_dim(m, tau) - weight_dim(m, tau + 2)


class WeightBlock:
    """Monomials of a fixed weight, in basis order."""

    __slots__ = ("multidegree", "weight", "monomials", "index")

    def __init__(self, m: Sequence[int], w: int):
        self.multidegree = check_multidegree(m)
        self.weight = w
        self.monomials = _exponents_with_sum(self.multidegree, w)
        self.index = {q: k for k, q in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)


def weight_block(m: Sequence[int], w: int) -> WeightBlock:
    return WeightBlock(m, w)


def _exponents_with_sum(m: tuple[int, ...], w: int) -> list[tuple[int, ...]]:
    total = sum(m)
    if (w + total) % 2:
        return []
    s = (w + total) // 2
    if s < 0 or s > total:
        return []
    # suffix capacities prune the lexicographic enumeration
    cap = [0] * (len(m) + 1)
    for i in range(len(m) - 1, -1, -1):
        cap[i] = cap[i + 1] + m[i]
    out: list[tuple[int, ...]] = []

    def rec(i: int, left: int, prefix: tuple[int, ...]):
        if i == len(m):
            if left == 0:
                out.append(prefix)
            return
        lo = max(0, left - cap[i + 1])
        hi = min(m[i], left)
        for qi in range(lo, hi + 1):
            rec(i + 1, left - qi, prefix + (qi,))

    rec(0, s, ())
    return out


def raising_matrix(m: Sequence[int], tau: int) -> tuple[RatMatrix, WeightBlock, WeightBlock]:
    """Matrix of ``E`` from the weight-``tau`` block to the weight-``tau+2`` block."""
    src = WeightBlock(m, tau)
    dst = WeightBlock(m, tau + 2)
    rows = [[0] * len(src) for _ in range(len(dst))]
    for col, q in enumerate(src.monomials):
        for i, (qi, mi) in enumerate(zip(q, src.multidegree)):
            if qi < mi:
                r = q[:i] + (qi + 1,) + q[i + 1:]
                rows[dst.index[r]][col] += mi - qi
    return RatMatrix.from_rows(rows, len(src)), src, dst


def u_inv_basis(m: Sequence[int], tau: int, cache: BasisCache | None = None) -> list[Polynomial]:
    """Basis of the U-invariants of multidegree ``m`` and weight ``tau``.

    Computed as the kernel of the raising operator on the weight block, using
    the deterministic kernel convention of :func:`kernel_basis`.
    """
    m = check_multidegree(m)
    if cache is not None:
        hit = cache.get(m, tau)
        if hit is not None:
            return hit
    mat, src, _ = raising_matrix(m, tau)
    result = []
    if len(src):
        for vec in kernel_basis(mat):
            terms = {q: c for q, c in zip(src.monomials, vec) if c}
            result.append(Polynomial._raw(m, terms))
    if cache is not None:
        cache.put(m, tau, result)
    return result


def g_inv_basis(m: Sequence[int], cache: BasisCache | None = None) -> list[Polynomial]:
    """SL(2)-invariants: weight-zero U-invariants, checked against ``F``."""
    basis = u_inv_basis(m, 0, cache)
    for p in basis:
        if lowering(p):
            raise ArithmeticError(f"weight-0 highest weight vector not killed by F: {p}")
    return basis
