"""Concrete spinor representations of the complexified Clifford algebra.

The gamma matrices are built by recursive tensor doubling so that the first
k generators of the dimension-n system restrict to the dimension-k system
on a fixed submodule (used by the induced/restricted representations).
All gammas are hermitian and unitary, so the hermite conjugation of
components realizes the algebra's reversion involution on matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg

from .clifford import MAX_DIMENSION, Multivector

_SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


def spinor_dim(m: int) -> int:
    return 1 << (m // 2)


@lru_cache(maxsize=None)
def _standard_gammas(m: int) -> tuple:
    if m == 1:
        return (np.array([[1.0 + 0j]]),)
    if m == 2:
        return (_SIGMA1.copy(), _SIGMA2.copy())
    if m % 2 == 1:
        even = _standard_gammas(m - 1)
        r = (m - 1) // 2
        chi = np.eye(spinor_dim(m), dtype=complex)
        for g in even:
            chi = chi @ g
        chi = (-1j) ** r * chi
        return even + (chi,)
    lower = _standard_gammas(m - 2)
    eye = np.eye(spinor_dim(m - 2), dtype=complex)
    gammas = tuple(np.kron(g, _SIGMA3) for g in lower)
    return gammas + (np.kron(eye, _SIGMA1), np.kron(eye, _SIGMA2))


@dataclass(frozen=True)
class GammaRep:
    """Hermitian gamma matrices for CLIFF^C(R^m) on C^{2^[m/2]}.

    basis_change records the unitary relating this system to the standard
    recursive one (identity for build_gamma_rep), so intertwiners between
    conjugated systems can be transported.
    """

    m: int
    gammas: tuple
    basis_change: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.basis_change is None:
            object.__setattr__(self, "basis_change", np.eye(self.dim, dtype=complex))

    @property
    def dim(self) -> int:
        return spinor_dim(self.m)

    def gamma(self, v) -> np.ndarray:
        """Matrix of gamma(v) for a vector v in R^m (complex coefficients allowed)."""
        v = np.asarray(v)
        if v.shape != (self.m,):
            raise ValueError(f"expected vector of length {self.m}, got shape {v.shape}")
        return np.einsum("i,ijk->jk", v.astype(complex), np.stack(self.gammas))

    def conjugated(self, u: np.ndarray) -> "GammaRep":
        """Equivalent representation with gammas u gamma u^dagger."""
        u = np.asarray(u, dtype=complex)
        if not np.allclose(u @ u.conj().T, np.eye(self.dim), atol=1e-12):
            raise ValueError("basis change must be unitary")
        return GammaRep(
            self.m,
            tuple(u @ g @ u.conj().T for g in self.gammas),
            u @ self.basis_change,
        )


def build_gamma_rep(m: int) -> GammaRep:
    """Deterministic recursive gamma system for R^m, m <= 12."""
    if not 1 <= m <= MAX_DIMENSION:
        raise ValueError(f"dimension must be in 1..{MAX_DIMENSION}, got {m}")
    return GammaRep(m, _standard_gammas(m))


def rep_of(a: Multivector, rep: GammaRep) -> np.ndarray:
    """Algebra homomorphism sending blades to gamma-matrix products."""
    if a.m != rep.m:
        raise ValueError(f"dimension mismatch: multivector {a.m} vs rep {rep.m}")
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for mask, c in a.coeffs.items():
        mat = np.eye(rep.dim, dtype=complex)
        for i in range(rep.m):
            if mask >> i & 1:
                mat = mat @ rep.gammas[i]
        out += c * mat
    return out


@dataclass(frozen=True)
class Spinor:
    m: int
    components: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=complex)
        if comps.shape != (spinor_dim(self.m),):
            raise ValueError(f"spinor for m={self.m} needs {spinor_dim(self.m)} components")
        object.__setattr__(self, "components", comps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


@dataclass(frozen=True)
class CoSpinor:
    """Hermite-conjugate partner: stores the conjugated components as a covector."""

    m: int
    components: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=complex)
        if comps.shape != (spinor_dim(self.m),):
            raise ValueError(f"cospinor for m={self.m} needs {spinor_dim(self.m)} components")
        object.__setattr__(self, "components", comps)


def conjugate(psi: Spinor) -> CoSpinor:
    """The map phi: antilinear, with phi(C psi) = phi(psi) rep(reversion(C))."""
    return CoSpinor(psi.m, np.conj(psi.components))


def unconjugate(chi: CoSpinor) -> Spinor:
    return Spinor(chi.m, np.conj(chi.components))


def pairing(chi: CoSpinor, psi: Spinor) -> complex:
    """Sesquilinear pairing sum_a conj(phi)_a psi_a (chi already conjugated)."""
    if chi.m != psi.m:
        raise ValueError(f"dimension mismatch: {chi.m} vs {psi.m}")
    return complex(chi.components @ psi.components)


def apply(rep_matrix: np.ndarray, psi: Spinor) -> Spinor:
    return Spinor(psi.m, rep_matrix @ psi.components)


def _primitive_components(v: np.ndarray, rep: GammaRep) -> np.ndarray:
    vnorm = np.linalg.norm(v)
    if vnorm == 0:
        return np.zeros(rep.dim, dtype=complex)
    proj = 0.5 * (np.eye(rep.dim, dtype=complex) + rep.gamma(v / vnorm))
    # P is hermitian PSD; the column of largest diagonal (lowest index on ties)
    # projects a standard basis vector into the +1 eigenspace with its
    # dominant component real positive.
    diag = np.real(np.diag(proj))
    j = int(np.argmax(diag > diag.max() - 1e-12))
    psi = proj[:, j]
    norm = np.linalg.norm(psi)
    if norm < 1e-12:
        # only reachable for m = 1 with v < 0: the one-dimensional module
        # represents gamma(e_1) as +1 and has no +1 eigenvector for -e_1
        raise ValueError("gamma(v) has no +1 eigenspace in this module")
    return np.sqrt(vnorm) * psi / norm


def primitive_spinor(v, rep: GammaRep) -> Spinor:
    """Unit-eigenvector spinor with <conj(psi), gamma(w) psi> = (v, w) for all w.

    For v = 0 the identity degenerates; the zero spinor is returned (the
    zero functional) and callers that need a genuine frame should reject it.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (rep.m,):
        raise ValueError(f"expected vector of length {rep.m}")
    if np.linalg.norm(v) == 0:
        raise ValueError("primitive spinor of the zero vector is degenerate")
    return Spinor(rep.m, _primitive_components(v, rep))


def vector_pairing(psi: Spinor, w, rep: GammaRep) -> complex:
    """<conj(psi), gamma(w) psi>: real-linear in w for primitive spinors."""
    w = np.asarray(w, dtype=float)
    if psi.m != rep.m or w.shape != (rep.m,):
        raise ValueError("dimension mismatch")
    return complex(np.conj(psi.components) @ rep.gamma(w) @ psi.components)


@dataclass(frozen=True)
class CliffordGroupElement:
    """Unitary spinor-space matrix together with the rotation it covers."""

    m: int
    matrix: np.ndarray
    rotation: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))
        object.__setattr__(self, "rotation", np.asarray(self.rotation, dtype=float))

    @classmethod
    def identity(cls, m: int) -> "CliffordGroupElement":
        return cls(m, np.eye(spinor_dim(m), dtype=complex), np.eye(m))

    def inverse(self) -> "CliffordGroupElement":
        return CliffordGroupElement(self.m, self.matrix.conj().T, self.rotation.T)

    def __matmul__(self, other: "CliffordGroupElement") -> "CliffordGroupElement":
        return CliffordGroupElement(self.m, self.matrix @ other.matrix, self.rotation @ other.rotation)


def _assert_special_orthogonal(r: np.ndarray, tol: float):
    m = r.shape[0]
    if r.shape != (m, m) or not np.allclose(r.T @ r, np.eye(m), atol=tol):
        raise ValueError("matrix is not orthogonal within tolerance")
    if np.linalg.det(r) < 0:
        raise ValueError("matrix has determinant -1 (not in SO)")


def _default_sign(tau: np.ndarray) -> np.ndarray:
    """Deterministic global sign: largest-|entry| coefficient made 'positive'."""
    flat = np.abs(tau).ravel()
    j = int(np.argmax(flat > flat.max() - 1e-12))
    z = tau.ravel()[j]
    if z.real < -1e-14 or (abs(z.real) <= 1e-14 and z.imag < 0):
        return -tau
    return tau


def spin_lift(rotation, rep: GammaRep, anchor: CliffordGroupElement | None = None,
              tol: float = 1e-10) -> CliffordGroupElement:
    """Unitary tau with tau gamma(v) tau^{-1} = gamma(R v) for all v.

    The rotation is split into planar blocks by a real Schur decomposition
    and lifted plane by plane as cos(t/2) - sin(t/2) gamma(u) gamma(w).
    The double-cover sign is chosen nearest to the anchor when given,
    otherwise by a fixed deterministic rule.
    """
    r = np.asarray(rotation, dtype=float)
    if r.shape != (rep.m, rep.m):
        raise ValueError(f"expected {rep.m}x{rep.m} rotation")
    _assert_special_orthogonal(r, tol)

    t, z = scipy.linalg.schur(r, output="real")
    tau = np.eye(rep.dim, dtype=complex)
    pending_flip = None  # unpaired -1 eigenvalue column awaiting a partner
    i = 0
    while i < rep.m:
        if i + 1 < rep.m and abs(t[i + 1, i]) > 1e-12:
            theta = np.arctan2(t[i + 1, i], t[i, i])
            gu, gw = rep.gamma(z[:, i]), rep.gamma(z[:, i + 1])
            tau = (np.cos(theta / 2) * np.eye(rep.dim) - np.sin(theta / 2) * gu @ gw) @ tau
            i += 2
        else:
            if t[i, i] < 0:
                if pending_flip is None:
                    pending_flip = z[:, i]
                else:
                    # two -1 eigenvalues form a rotation by pi in their plane
                    gu, gw = rep.gamma(pending_flip), rep.gamma(z[:, i])
                    tau = (-gu @ gw) @ tau
                    pending_flip = None
            i += 1
    if pending_flip is not None:
        raise ValueError("odd number of -1 eigenvalues; determinant is -1")

    if anchor is not None:
        overlap = np.real(np.trace(anchor.matrix.conj().T @ tau))
        if abs(overlap) < 1e-6:
            raise ValueError("double-cover sign is ambiguous relative to the anchor "
                             "(frame field discontinuity)")
        if overlap < 0:
            tau = -tau
    else:
        tau = _default_sign(tau)
    return CliffordGroupElement(rep.m, tau, r)


def recover_rotation(tau: CliffordGroupElement, rep: GammaRep, frame=None) -> np.ndarray:
    """Matrix of vector pairings of the rotated primitive-spinor family.

    Entry (i, l) is <conj(psi_l), gamma(b^i) psi_l> with
    psi_l = tau . primitive_spinor(e_l).  For the standard frame this
    reproduces tau's rotation; for tau = identity and frame rows
    b^i = sum_j L[i, j] e_j it reproduces L.
    """
    m = rep.m
    if frame is None:
        frame = np.eye(m)
    frame = np.asarray(frame, dtype=float)
    out = np.empty((frame.shape[0], m))
    for ell in range(m):
        base = primitive_spinor(np.eye(m)[ell], rep)
        psi = Spinor(m, tau.matrix @ base.components)
        for i in range(frame.shape[0]):
            out[i, ell] = np.real(vector_pairing(psi, frame[i], rep))
    return out
