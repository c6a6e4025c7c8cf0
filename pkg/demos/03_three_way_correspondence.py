"""
Torus, Borel and flag-variety quotients
=======================================

For a shift chi/n in the moment interval, the chi-shifted torus quotient of
Proj(R^U), the chi-shifted Borel quotient of X, and the G-quotient of
X x P^1 share one graded ring.  We compare the Hilbert functions computed
in two different rings, and check that restricting to the flag base point
is an isomorphism.
"""

import warnings

from sl2git.gitcore import (
    Config,
    WallWarning,
    delta_points,
    extend,
    hilbert_flag,
    hilbert_uH,
    rho,
    verify_correspondence,
    walls,
)
from sl2git.sl2rep import u_inv_basis

d_vec = (1, 1, 3)
data = delta_points(Config(d_vec, dmax=3))
print("interval:", data.lo, data.hi)
print("rational points up to degree 3:", [str(p) for p in data.points])
print("walls:", walls(d_vec))

cfg = Config(d_vec, chi=2, nden=1, dmax=3)
print("torus side:", hilbert_uH(cfg))
print("flag side: ", hilbert_flag(cfg))

report = verify_correspondence(cfg)
print("ranks of restriction (rank, flag dim, torus dim):", report.rho_ranks)
print("pass:", report.passed)

# Extending a U-invariant to X x P^1 and restricting back is the identity.
s = u_inv_basis(cfg.multidegree(2), 2 * cfg.chi)[0]
s_tilde = extend(s, cfg, 2)
print("s       =", s)
print("extended:", len(s_tilde.terms), "terms; restriction recovers s:", rho(s_tilde, cfg, 2) == s)

# chi/n = 2 is a wall of (1,1,1,1); the ring-level statement still holds.
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always", WallWarning)
    r = verify_correspondence(Config((1, 1, 1, 1), chi=2, dmax=2))
print("four points, chi=2:", list(r.hilbert_uH), "pass:", r.passed, "warnings:", len(caught))
