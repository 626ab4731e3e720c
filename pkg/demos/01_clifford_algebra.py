"""Blade arithmetic in the euclidean Clifford algebra.

Multivectors are coefficient maps over the blade basis of R^m with
generators squaring to +1.  Integer inputs stay exact, so the algebraic
identities below hold on the nose.
"""

import numpy as np

from subdirac import (
    Multivector,
    adjoint_rotation,
    geometric_product,
    grade_project,
    is_clifford_group,
    reversion,
)

m = 4
e = [Multivector.basis_vector(m, i) for i in range(1, m + 1)]

# generator relations: e_i^2 = 1, e_i e_j = -e_j e_i
print("e1*e1 =", e[0] * e[0])
print("e1*e2 =", e[0] * e[1])
print("e2*e1 =", e[1] * e[0])

# a bivector squares to -1, exactly
b = e[0] * e[1]
print("(e1e2)^2 =", b * b)

# grading: pick out pieces and reassemble
x = 3 + 2 * e[0] + e[0] * e[1] + 5 * (e[0] * e[1] * e[2] * e[3])
print("x =", x)
for p in range(m + 1):
    part = grade_project(x, p)
    if not part.is_zero():
        print(f"  grade {p}:", part)

# reversion flips blade order: sign (-1)^(p(p-1)/2)
print("reversion(x) =", reversion(x))
print("anti-automorphism check:",
      reversion(x * b) == reversion(b) * reversion(x))

# rotors live in the Clifford group; their conjugation action is a rotation
theta = 0.6
rotor = Multivector.scalar(np.cos(theta), m) + np.sin(theta) * Multivector.blade(m, [1, 2])
print("rotor in Clifford group:", is_clifford_group(rotor))
R = adjoint_rotation(rotor)
print("conjugation acts on R^4 as:\n", np.round(R, 12))
print("orthogonality residual:", np.abs(R.T @ R - np.eye(m)).max())

# ... while a generic even element is not a rotation
junk = Multivector.scalar(1, m) + 2 * Multivector.blade(m, [1, 2, 3, 4])
print("1 + 2*e1234 in Clifford group:", is_clifford_group(junk))
