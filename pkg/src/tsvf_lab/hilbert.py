"""Finite-dimensional complex Hilbert space kernel.

Conventions used throughout the package:

* computational basis index 0 is spin up along z, index 1 is spin down;
* boxes are ordered A=0, B=1, C=2;
* multiparticle indices are big-endian in particle order, so the Kronecker
  product ``kron(a, b)`` puts particle ``a`` on the most significant digit.

States and observables are immutable value objects wrapping read-only
numpy arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
DEGENERACY_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state. Use :meth:`from_amplitudes` to normalize."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size < 1:
            raise ValueError("state must have dim >= 1")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2={norm2!r})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amps / norm)

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1.0
        return cls(amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def allclose(self, other: "StateVector", atol: float = 1e-10, up_to_phase: bool = True) -> bool:
        if self.dim != other.dim:
            return False
        if up_to_phase:
            return abs(abs(inner(self, other)) - 1.0) <= atol
        return bool(np.allclose(self.amplitudes, other.amplitudes, atol=atol))

    def __repr__(self) -> str:
        return f"StateVector({np.array2string(self.amplitudes, precision=4)})"


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian operator on a ``dim``-dimensional space."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ValueError(f"observable must be a square matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=HERMITIAN_TOL):
            raise ValueError("observable matrix is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other: "Observable") -> "Observable":
        return Observable(self.matrix + as_matrix(other))

    def __sub__(self, other: "Observable") -> "Observable":
        return Observable(self.matrix - as_matrix(other))

    def __neg__(self) -> "Observable":
        return Observable(-self.matrix)

    def __rmul__(self, scalar: float) -> "Observable":
        return Observable(float(scalar) * self.matrix)

    def __repr__(self) -> str:
        return f"Observable(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class SpectralForm:
    """Distinct ascending eigenvalues with their eigenspace projectors."""

    eigenvalues: np.ndarray
    projectors: np.ndarray  # shape (k, dim, dim)

    @property
    def ranks(self) -> list[int]:
        return [int(round(np.trace(p).real)) for p in self.projectors]

    def reconstruct(self) -> np.ndarray:
        return np.einsum("k,kij->ij", self.eigenvalues, self.projectors)


def as_matrix(op) -> np.ndarray:
    if isinstance(op, Observable):
        return op.matrix
    return np.asarray(op, dtype=complex)


def _as_amplitudes(state) -> np.ndarray:
    if isinstance(state, StateVector):
        return state.amplitudes
    return np.asarray(state, dtype=complex)


def inner(bra, ket) -> complex:
    """``<bra|ket>``, conjugating the bra."""
    b, k = _as_amplitudes(bra), _as_amplitudes(ket)
    if b.shape != k.shape:
        raise ValueError(f"dimension mismatch: {b.size} vs {k.size}")
    return complex(np.vdot(b, k))


def tensor_state(*states: StateVector) -> StateVector:
    """Product state; the first argument is the most significant index."""
    amps = reduce(np.kron, (s.amplitudes for s in states))
    return StateVector.from_amplitudes(amps)


def tensor_op(*ops) -> Observable:
    return Observable(reduce(np.kron, (as_matrix(o) for o in ops)))


def local_op(op, site: int, n_sites: int, local_dim: int = 2) -> Observable:
    """Embed a single-site operator at ``site`` of an ``n_sites`` register."""
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} out of range for {n_sites} sites")
    eye = np.eye(local_dim, dtype=complex)
    factors = [as_matrix(op) if k == site else eye for k in range(n_sites)]
    return tensor_op(*factors)


I2 = Observable(np.eye(2))
SIGMA_X = Observable([[0, 1], [1, 0]])
SIGMA_Y = Observable([[0, -1j], [1j, 0]])
SIGMA_Z = Observable([[1, 0], [0, -1]])

UP = StateVector.basis(2, 0)
DOWN = StateVector.basis(2, 1)


def spin_observable(theta: float, phi: float = 0.0) -> Observable:
    """Spin component along the unit vector with polar angle ``theta`` and azimuth ``phi``."""
    nx = np.sin(theta) * np.cos(phi)
    ny = np.sin(theta) * np.sin(phi)
    nz = np.cos(theta)
    m = nx * SIGMA_X.matrix + ny * SIGMA_Y.matrix + nz * SIGMA_Z.matrix
    # force exact Hermiticity; the sum above is Hermitian up to rounding only
    return Observable(0.5 * (m + m.conj().T))


def spin_state(theta: float, phi: float = 0.0, up: bool = True) -> StateVector:
    """Eigenstate of ``spin_observable(theta, phi)`` with eigenvalue +1 (or -1)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    if up:
        return StateVector.from_amplitudes([c, np.exp(1j * phi) * s])
    return StateVector.from_amplitudes([-np.exp(-1j * phi) * s, c])


UP_X = spin_state(np.pi / 2, 0.0)
DOWN_X = spin_state(np.pi / 2, 0.0, up=False)
UP_Y = spin_state(np.pi / 2, np.pi / 2)
DOWN_Y = spin_state(np.pi / 2, np.pi / 2, up=False)


def singlet() -> StateVector:
    """(|up,down> - |down,up>)/sqrt(2)."""
    return StateVector.from_amplitudes([0, 1, -1, 0])


def ghz_state() -> StateVector:
    """(|up,up,up> - |down,down,down>)/sqrt(2), built by direct amplitude assignment."""
    amps = np.zeros(8, dtype=complex)
    amps[0], amps[7] = 1.0, -1.0
    return StateVector.from_amplitudes(amps)


def bell_basis() -> list[tuple[str, StateVector]]:
    s = 1 / np.sqrt(2)
    return [
        ("phi+", StateVector([s, 0, 0, s])),
        ("phi-", StateVector([s, 0, 0, -s])),
        ("psi+", StateVector([0, s, s, 0])),
        ("psi-", StateVector([0, s, -s, 0])),
    ]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(matrix, tol: float = JACOBI_TOL, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a Hermitian matrix.

    Each pivot (p, q) is first rotated by a diagonal phase so that the
    off-diagonal element becomes real, then annihilated by a real Givens
    rotation. Returns (eigenvalues ascending, eigenvectors as columns).
    Iteration stops once the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||A||_F)``.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        if _offdiag_norm(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                theta = 0.5 * np.arctan2(2.0 * r, (a[q, q] - a[p, p]).real)
                c, s = np.cos(theta), np.sin(theta)
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ u
    else:
        if _offdiag_norm(a) >= threshold:
            raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def spectral_decompose(obs, degeneracy_tol: float = DEGENERACY_TOL) -> SpectralForm:
    """Group the spectrum of a Hermitian operator into eigenspace projectors.

    Eigenvalues closer than ``degeneracy_tol`` times the spectral radius
    (or absolutely, for the zero operator) are merged; the merged value is
    the cluster mean.
    """
    m = as_matrix(obs)
    if not np.allclose(m, m.conj().T, rtol=0.0, atol=HERMITIAN_TOL):
        raise ValueError("spectral_decompose requires a Hermitian matrix")
    w, vecs = jacobi_eigh(m)
    radius = float(np.max(np.abs(w)))
    gap = degeneracy_tol * (radius if radius > 0 else 1.0)

    clusters: list[list[int]] = [[0]]
    for k in range(1, w.size):
        if w[k] - w[clusters[-1][-1]] <= gap:
            clusters[-1].append(k)
        else:
            clusters.append([k])

    eigenvalues = np.array([w[c].mean() for c in clusters])
    projectors = np.array([vecs[:, c] @ vecs[:, c].conj().T for c in clusters])
    eigenvalues.setflags(write=False)
    projectors.setflags(write=False)
    return SpectralForm(eigenvalues, projectors)


def random_state(dim: int, rng: np.random.Generator) -> StateVector:
    return StateVector.from_amplitudes(rng.normal(size=dim) + 1j * rng.normal(size=dim))


def random_hermitian(dim: int, rng: np.random.Generator) -> Observable:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return Observable(0.5 * (z + z.conj().T))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_degenerate_hermitian(dim: int, n_levels: int, rng: np.random.Generator) -> Observable:
    """Hermitian matrix with exactly ``n_levels`` distinct integer eigenvalues."""
    levels = rng.permutation(np.arange(-dim, dim + 1))[:n_levels]
    diag = np.concatenate([levels, rng.choice(levels, size=dim - n_levels)])
    u = random_unitary(dim, rng)
    m = u @ np.diag(diag.astype(float)) @ u.conj().T
    return Observable(0.5 * (m + m.conj().T))


def is_projector_set(projectors: Sequence[np.ndarray], tol: float = 1e-10) -> bool:
    """Hermitian, idempotent, mutually orthogonal, and complete."""
    ps = [np.asarray(p, dtype=complex) for p in projectors]
    if not ps:
        return False
    dim = ps[0].shape[0]
    for i, p in enumerate(ps):
        if p.shape != (dim, dim):
            return False
        if not np.allclose(p, p.conj().T, atol=tol, rtol=0):
            return False
        if not np.allclose(p @ p, p, atol=tol, rtol=0):
            return False
        for q in ps[i + 1:]:
            if not np.allclose(p @ q, 0, atol=tol, rtol=0):
                return False
    return bool(np.allclose(sum(ps), np.eye(dim), atol=tol, rtol=0))
