"""Dense complex linear algebra on 2^n dimensional spaces.

Matrices and statevectors are plain ``numpy`` arrays of dtype ``complex128``.
Everything here is a pure function of its inputs.
"""

from __future__ import annotations

import math

import numpy as np

from .config import DEFAULT, MAX_QUBITS, Tolerances
from .errors import DimensionError, NotHermitianError, NotUnitaryError

_MAX_SERIES_TERMS = 80
_MAX_POWER_ITERATIONS = 200_000


def num_qubits(dim: int) -> int:
    """Return n for a dimension 2^n, rejecting anything else."""
    if dim < 1 or dim & (dim - 1):
        raise DimensionError(f"dimension {dim} is not a power of two")
    n = dim.bit_length() - 1
    if n > MAX_QUBITS:
        raise DimensionError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")
    return n


def _as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    num_qubits(m.shape[0])
    return m


def hermitian_violation(m: np.ndarray) -> tuple[float, int, int]:
    """Largest |M[i,j] - conj(M[j,i])| and where it occurs."""
    diff = np.abs(m - m.conj().T)
    i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return float(diff[i, j]), int(i), int(j)


def check_hermitian(m, tol: Tolerances = DEFAULT) -> np.ndarray:
    m = _as_square(m)
    worst, i, j = hermitian_violation(m)
    if worst > tol.hermitian:
        raise NotHermitianError(
            f"matrix is not Hermitian: |M[{i},{j}] - conj(M[{j},{i}])| = {worst:.3e} "
            f"(M[{i},{j}] = {m[i, j]}, M[{j},{i}] = {m[j, i]})"
        )
    return m


def unitarity_error(u: np.ndarray) -> float:
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), "fro"))


def is_unitary(u, tol: Tolerances = DEFAULT) -> bool:
    u = _as_square(u)
    return unitarity_error(u) <= tol.unitary


def herm_exp(h, t: float, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Return exp(-i H t) by scaling and squaring a truncated Taylor series."""
    h = check_hermitian(h, tol)
    dim = h.shape[0]
    a = (-1j * t) * h
    norm1 = float(np.abs(a).sum(axis=0).max())
    squarings = 0 if norm1 <= 0.5 else math.ceil(math.log2(norm1 / 0.5))
    a = a / (2.0**squarings)

    result = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, _MAX_SERIES_TERMS):
        term = term @ a / k
        result += term
        if np.abs(term).max() <= tol.series_term * np.abs(result).max():
            break
    for _ in range(squarings):
        result = result @ result
    return result


def _power_iterate(h: np.ndarray, v: np.ndarray, rtol: float) -> float | None:
    """Top eigenvalue of H^2 from start vector ``v``; None if the iterate collapses."""
    dim = h.shape[0]
    v = v / np.linalg.norm(v)
    next_basis = 0
    mu = 0.0
    for _ in range(_MAX_POWER_ITERATIONS):
        w = h @ (h @ v)
        w_norm = np.linalg.norm(w)
        if w_norm == 0.0:
            # start vector lies in the kernel; re-seed with basis vectors in turn
            if next_basis >= dim:
                return None
            v = np.zeros(dim, dtype=complex)
            v[next_basis] = 1.0
            next_basis += 1
            continue
        mu = float(np.vdot(v, w).real)
        residual = np.linalg.norm(w - mu * v)
        v = w / w_norm
        if residual <= rtol * abs(mu):
            break
    return mu


def spectral_norm(h, tol: Tolerances = DEFAULT) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix.

    Diagonal input is handled exactly. Otherwise power iteration on H^2 runs
    from the normalized all-ones vector and from a fixed pseudo-random vector,
    and the larger estimate wins; the second seed covers a dominant eigenvector
    orthogonal to all-ones.
    """
    h = check_hermitian(h, tol)
    off = h - np.diag(np.diag(h))
    if not off.any():
        return float(np.abs(np.diag(h)).max())
    dim = h.shape[0]
    rng = np.random.default_rng(1234)
    seeds = [
        np.ones(dim, dtype=complex),
        rng.standard_normal(dim) + 1j * rng.standard_normal(dim),
    ]
    estimates = [_power_iterate(h, s, tol.spectral) for s in seeds]
    best = max((e for e in estimates if e is not None), default=0.0)
    return math.sqrt(max(best, 0.0))


def align_phase(u, v) -> tuple[float, float]:
    """Return (phi, distance) minimising ||U - e^{i phi} V||_F."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise DimensionError(f"shape mismatch: {u.shape} vs {v.shape}")
    overlap = np.vdot(v, u)  # trace(V^dagger U)
    phi = float(np.angle(overlap)) if abs(overlap) > 0 else 0.0
    distance = float(np.linalg.norm(u - np.exp(1j * phi) * v))
    return phi, distance


def phase_aligned_distance(u, v) -> float:
    return align_phase(u, v)[1]


def basis_state(n: int, z: int) -> np.ndarray:
    dim = 2**n
    num_qubits(dim)
    if not 0 <= z < dim:
        raise DimensionError(f"basis index {z} out of range for {n} qubits")
    psi = np.zeros(dim, dtype=complex)
    psi[z] = 1.0
    return psi


def plus_state(n: int) -> np.ndarray:
    """The equal superposition |s> over all 2^n basis states."""
    dim = 2**n
    num_qubits(dim)
    return np.full(dim, 1.0 / math.sqrt(dim), dtype=complex)


def check_statevector(psi, tol: Tolerances = DEFAULT) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise DimensionError(f"statevector must be one-dimensional, got shape {psi.shape}")
    num_qubits(psi.shape[0])
    err = abs(np.linalg.norm(psi) - 1.0)
    if err > tol.norm:
        raise DimensionError(f"statevector norm deviates from 1 by {err:.3e}")
    return psi


def apply_matrix(u, psi, tol: Tolerances = DEFAULT, check_unitary: bool = True) -> np.ndarray:
    u = _as_square(u)
    psi = check_statevector(psi, tol)
    if u.shape[1] != psi.shape[0]:
        raise DimensionError(f"matrix of size {u.shape[0]} cannot act on a state of length {psi.shape[0]}")
    if check_unitary and unitarity_error(u) > tol.unitary:
        raise NotUnitaryError(f"matrix is not unitary (||U^dagger U - I||_F = {unitarity_error(u):.3e})")
    return u @ psi
