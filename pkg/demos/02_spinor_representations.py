"""Gamma matrices, primitive spinors, and spin lifts.

The recursive tensor construction gives hermitian anticommuting gammas in
every dimension; primitive spinors turn the spinor pairing into the plain
inner product of vectors, and spin lifts realize rotations as unitary
conjugations upstairs.
"""

import numpy as np

from subdirac import (
    build_gamma_rep,
    conjugate,
    pairing,
    primitive_spinor,
    recover_rotation,
    spin_lift,
    vector_pairing,
)

rep = build_gamma_rep(3)
print("gamma matrices for R^3:")
for i, g in enumerate(rep.gammas, 1):
    print(f"gamma_{i} =\n{np.round(g, 12)}")

# anticommutation, spot checked
g1, g2 = rep.gammas[:2]
print("\n{gamma_1, gamma_2} =", np.abs(g1 @ g2 + g2 @ g1).max())

# a primitive spinor of v pairs to the inner product with any w
rng = np.random.default_rng(0)
v = np.array([0.3, -1.2, 0.8])
psi = primitive_spinor(v, rep)
print("\nnorm^2 of psi_v:", pairing(conjugate(psi), psi).real, " |v| =", np.linalg.norm(v))
for _ in range(3):
    w = rng.normal(size=3)
    lhs = vector_pairing(psi, w, rep)
    print(f"  <psi_v, gamma(w) psi_v> = {lhs.real:+.12f}   (v,w) = {v @ w:+.12f}")

# rotations lift to the spin group: tau gamma(v) tau^{-1} = gamma(R v)
q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
if np.linalg.det(q) < 0:
    q[:, 0] = -q[:, 0]
tau = spin_lift(q, rep)
worst = max(np.abs(tau.matrix @ rep.gamma(np.eye(3)[i]) @ tau.matrix.conj().T
                   - rep.gamma(q[:, i])).max() for i in range(3))
print("\nspin lift adjoint-action residual:", worst)

# the double cover: lifting R twice can only differ by a global sign
tau2 = spin_lift(q @ q, rep)
prod = tau.matrix @ tau.matrix
print("lift(R^2) = +/- lift(R)^2:",
      min(np.abs(tau2.matrix - prod).max(), np.abs(tau2.matrix + prod).max()))

# pairing the rotated primitive-spinor family against the axes returns R
print("\nrotation recovered from spinor pairings:")
print(np.round(recover_rotation(tau, rep), 12))
print("input rotation:")
print(np.round(q, 12))
