"""
The unipotent quotient of (P^1)^3
=================================

With L = O(1) x O(1) x O(5) the last factor dominates, and a point is
U-semistable exactly when its last coordinate is not [1:0].  The quotient map
phi takes consecutive differences of affine coordinates.
"""

import random

from sl2git.gitcore import Config, NoSectionUpTo, phi, u_semistable, unipotent_act

cfg = Config((1, 1, 5))

for x in ([(2, 1), (3, 1), (1, 1)], [(1, 0), (1, 0), (0, 1)], [(1, 0), (1, 0), (1, 0)]):
    verdict = u_semistable(x, cfg, 2)
    if isinstance(verdict, NoSectionUpTo):
        print(x, "-> no invariant section up to degree", verdict.bound)
    else:
        print(x, f"-> degree {verdict.degree} witness {verdict.witness} = {verdict.value}")

# phi is constant along U-orbits [a:b] -> [a + t b : b].
x = [(2, 1), (5, 1), (7, 1)]
print("phi(x)     =", phi(x, cfg))
print("phi(u_1 x) =", phi(unipotent_act(1, x), cfg))

rng = random.Random(0)
for _ in range(5):
    x = [(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)]
    t = rng.randint(-4, 4)
    assert phi(x, cfg) == phi(unipotent_act(t, x), cfg)
print("phi is U-invariant on random samples")
