"""Invariant rings and quotients for SL(2) acting on products of P^1."""

from .exactlin import RatMatrix, kernel_basis, rank, rref, solve
from .gitcore import (
    Config,
    NoSectionUpTo,
    Semistable,
    b_semistable,
    delta_interval,
    delta_points,
    extend,
    hilbert_flag,
    hilbert_uH,
    phi,
    rho,
    u_semistable,
    verify_correspondence,
    walls,
)
from .polyring import Polynomial, alpha, basis, beta, omega, parse_points, weight
from .sl2rep import g_inv_basis, lowering, multiplicity, raising, u_inv_basis, weight_dim

__version__ = "0.1.0"
