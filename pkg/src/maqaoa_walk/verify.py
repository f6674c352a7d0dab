"""Independent reference computations used to check every construction.

Nothing here calls :func:`maqaoa_walk.linalg.herm_exp`; gate matrices are built
from their explicit entries and the exponential oracle is a plain time-sliced
Taylor series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionError
from .linalg import align_phase, check_hermitian
from .operators import qubit_mask
from .transpiler import Gate, GateCircuit

H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
T_MATRIX = np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex)
CX_MATRIX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def _single_qubit(m: np.ndarray, q: int, n: int) -> np.ndarray:
    return np.kron(np.kron(np.eye(2 ** (q - 1)), m), np.eye(2 ** (n - q)))


def _cx(control: int, target: int, n: int) -> np.ndarray:
    cm, tm = qubit_mask(control, n), qubit_mask(target, n)
    dim = 2**n
    perm = np.zeros((dim, dim), dtype=complex)
    for z in range(dim):
        perm[z ^ tm if z & cm else z, z] = 1.0
    return perm


def gate_matrix(gate: Gate, n: int) -> np.ndarray:
    if gate.kind == "H":
        return _single_qubit(H_MATRIX, gate.qubits[0], n)
    if gate.kind == "T":
        return _single_qubit(T_MATRIX, gate.qubits[0], n)
    return _cx(gate.qubits[0], gate.qubits[1], n)


def reference_gate_unitary(circuit: GateCircuit) -> np.ndarray:
    """Product of lifted gate matrices, first gate rightmost."""
    out = np.eye(2**circuit.n, dtype=complex)
    for g in circuit.gates:
        out = gate_matrix(g, circuit.n) @ out
    return out


def simulate_gates(circuit: GateCircuit, psi: np.ndarray) -> np.ndarray:
    """Apply the circuit gate by gate to a statevector."""
    psi = np.asarray(psi, dtype=complex)
    for g in circuit.gates:
        psi = gate_matrix(g, circuit.n) @ psi
    return psi


def series_exp_oracle(h, t: float) -> np.ndarray:
    """exp(-i H t) from a raw Taylor series over slices with ||H|| dt <= 1/4, no squaring."""
    h = check_hermitian(h)
    dim = h.shape[0]
    bound = float(np.abs(h).sum(axis=1).max())  # induced inf-norm >= spectral norm
    slices = max(1, math.ceil(bound * abs(t) / 0.25))
    a = (-1j * t / slices) * h
    step = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, 40):
        term = term @ a / k
        step = step + term
        if not np.abs(term).max() > 1e-18:
            break
    out = np.eye(dim, dtype=complex)
    for _ in range(slices):
        out = step @ out
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    distance: float
    phase: float
    tolerance: float
    passed: bool
    worst_entry: tuple[int, int, float]
    global_phase_allowed: bool

    def to_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        i, j, mag = self.worst_entry
        verdict = "PASS" if self.passed else "FAIL"
        phase = f"{self.phase:.12g} rad" if self.global_phase_allowed else "not allowed"
        return (
            f"{verdict}: distance {self.distance:.3e} (tolerance {self.tolerance:.1e})\n"
            f"global phase: {phase}\n"
            f"worst entry: ({i}, {j}) |diff| = {mag:.3e}"
        )


def check_equivalence(u, v, tolerance: float = 1e-9, allow_global_phase: bool = True) -> EquivalenceReport:
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise DimensionError(f"shape mismatch: {u.shape} vs {v.shape}")
    if allow_global_phase:
        phi, distance = align_phase(u, v)
    else:
        phi, distance = 0.0, float(np.linalg.norm(u - v))
    diff = np.abs(u - np.exp(1j * phi) * v)
    i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return EquivalenceReport(
        distance=distance,
        phase=phi,
        tolerance=tolerance,
        passed=distance <= tolerance,
        worst_entry=(int(i), int(j), float(diff[i, j])),
        global_phase_allowed=allow_global_phase,
    )
