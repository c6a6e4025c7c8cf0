"""
Invariants of points on the projective line
===========================================

Sections of O(m_1) x ... x O(m_n) on (P^1)^n are polynomials in pairs
(a_i, b_i).  The raising operator E kills exactly the U-invariants, and the
dimension of each highest-weight space can also be read off by counting
weights.  This script walks through both routes.
"""

from sl2git.polyring import beta, omega
from sl2git.sl2rep import g_inv_basis, multiplicity, raising, u_inv_basis, weight_dim

# Four points, one factor each.  Weight spaces of weight 0 and 2:
m = (1, 1, 1, 1)
print("weight dims:", weight_dim(m, 0), weight_dim(m, 2))

# Their difference is the number of invariants of weight 0.
print("multiplicity of tau=0:", multiplicity(m, 0))

# The kernel of E on the weight-0 block gives an explicit basis.
for p in g_inv_basis(m):
    print("  invariant:", p)

# Every highest-weight vector is annihilated by E.
for tau in (0, 2, 4):
    basis = u_inv_basis(m, tau)
    assert all(raising(p).is_zero() for p in basis)
    print(f"tau={tau}: {len(basis)} highest-weight vectors")

# The brackets omega_jk and the betas generate everything; for instance
# omega_12 * omega_34 is one of the two weight-0 invariants.
w = omega(0, 1, 4) * omega(2, 3, 4)
print("omega_12 omega_34 =", w)
print("beta_1 is U-invariant:", raising(beta(0, 1)).is_zero())

# Five conics: the 6-dimensional invariant space.
print("dim of invariants of (2,2,2,2,2):", len(g_inv_basis((2, 2, 2, 2, 2))))
