"""ma-QAOA schedules: diagonal cost half-layers and hypercube-edge mixer half-layers.

A cost (gamma) half-layer carries one angle per basis state z for the clause
|z><z| and acts as diag(exp(-i gamma_z)). A mixer (beta) half-layer carries one
angle per hypercube edge; with W the weighted adjacency matrix of those edges
it acts as exp(-i W).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, NamedTuple, Sequence, Union

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import DimensionError, MaqaoaError
from .linalg import check_statevector, herm_exp, plus_state
from .operators import (
    PauliString,
    b_operator_summands,
    bit,
    check_register,
    is_hypercube_edge,
    pauli_matrix,
    qubit_mask,
)

TWO_PI = 2 * math.pi


def wrap_angle(x: float) -> float:
    """Reduce an angle into [0, 2 pi)."""
    r = math.fmod(float(x), TWO_PI)
    if r < 0:
        r += TWO_PI
    return 0.0 if r >= TWO_PI else r + 0.0


@dataclass(frozen=True)
class GammaLayer:
    n: int
    gamma: tuple[float, ...]

    def __post_init__(self):
        check_register(self.n)
        values = tuple(float(g) for g in self.gamma)
        if len(values) != 2**self.n:
            raise MaqaoaError(f"gamma layer needs {2**self.n} angles, got {len(values)}")
        if not all(math.isfinite(g) for g in values):
            raise MaqaoaError("gamma angles must be finite")
        object.__setattr__(self, "gamma", tuple(wrap_angle(g) for g in values))

    @classmethod
    def zeros(cls, n: int) -> "GammaLayer":
        return cls(n, (0.0,) * 2**n)

    @property
    def is_zero(self) -> bool:
        return not any(self.gamma)

    def __add__(self, other: "GammaLayer") -> "GammaLayer":
        if other.n != self.n:
            raise DimensionError("gamma layers act on different registers")
        return GammaLayer(self.n, tuple(a + b for a, b in zip(self.gamma, other.gamma)))


@dataclass(frozen=True)
class BetaLayer:
    """Mixer angles keyed by hypercube edge (u, w) with u < w.

    Angles are kept as given rather than reduced mod 2 pi: for edges that
    share a vertex, shifting one angle by 2 pi changes exp(-i W).
    """

    n: int
    edges: tuple[tuple[tuple[int, int], float], ...] = ()

    def __post_init__(self):
        check_register(self.n)
        raw = self.edges.items() if isinstance(self.edges, Mapping) else self.edges
        angles: dict[tuple[int, int], float] = {}
        for (u, w), angle in raw:
            u, w = int(u), int(w)
            if not is_hypercube_edge(u, w, self.n):
                raise MaqaoaError(f"({u}, {w}) is not a hypercube edge on {self.n} qubits")
            key = (min(u, w), max(u, w))
            if key in angles:
                raise MaqaoaError(f"edge {key} listed twice")
            angle = float(angle)
            if not math.isfinite(angle):
                raise MaqaoaError(f"edge {key} has non-finite angle")
            angles[key] = angle
        object.__setattr__(self, "edges", tuple(sorted((k, a) for k, a in angles.items() if a != 0.0)))

    @classmethod
    def zeros(cls, n: int) -> "BetaLayer":
        return cls(n, ())

    @property
    def angles(self) -> dict[tuple[int, int], float]:
        return dict(self.edges)

    @property
    def is_zero(self) -> bool:
        return not self.edges


HalfLayer = Union[GammaLayer, BetaLayer]


@dataclass(frozen=True)
class Schedule:
    n: int
    layers: tuple[tuple[GammaLayer, BetaLayer], ...]

    def __post_init__(self):
        check_register(self.n)
        layers = tuple((g, b) for g, b in self.layers)
        if not layers:
            raise MaqaoaError("a schedule needs at least one layer")
        for i, (g, b) in enumerate(layers, 1):
            if not isinstance(g, GammaLayer) or not isinstance(b, BetaLayer):
                raise MaqaoaError(f"layer {i} must be a (GammaLayer, BetaLayer) pair")
            if g.n != self.n or b.n != self.n:
                raise DimensionError(f"layer {i} does not act on {self.n} qubits")
        object.__setattr__(self, "layers", layers)

    @property
    def half_layers(self) -> list[HalfLayer]:
        return [h for pair in self.layers for h in pair]

    @property
    def depth(self) -> int:
        return len(self.layers)


def gamma_unitary(layer: GammaLayer) -> np.ndarray:
    return np.diag(np.exp(-1j * np.asarray(layer.gamma)))


def beta_hamiltonian(layer: BetaLayer) -> np.ndarray:
    dim = 2**layer.n
    w = np.zeros((dim, dim), dtype=complex)
    for (u, v), angle in layer.edges:
        w[u, v] = w[v, u] = angle
    return w


@lru_cache(maxsize=512)
def _beta_unitary_cached(layer: BetaLayer, tol: Tolerances) -> np.ndarray:
    u = herm_exp(beta_hamiltonian(layer), 1.0, tol)
    u.setflags(write=False)
    return u


def beta_unitary(layer: BetaLayer, tol: Tolerances = DEFAULT) -> np.ndarray:
    """exp(-i W) for the layer's weighted edge adjacency W (read-only array)."""
    return _beta_unitary_cached(layer, tol)


def edge_rotation(n: int, u: int, w: int, angle: float) -> np.ndarray:
    """exp(-i angle (|u><w| + |w><u|)), identity off the {u, w} block."""
    m = np.eye(2**n, dtype=complex)
    c, s = math.cos(angle), math.sin(angle)
    m[u, u] = m[w, w] = c
    m[u, w] = m[w, u] = -1j * s
    return m


def beta_unitary_product(layer: BetaLayer) -> np.ndarray:
    """Ordered product of per-edge rotations, first edge applied first."""
    out = np.eye(2**layer.n, dtype=complex)
    for (u, w), angle in layer.edges:
        out = edge_rotation(layer.n, u, w, angle) @ out
    return out


def check_product_form(layer: BetaLayer, tol: float = 1e-9) -> float:
    """Distance between the sum-form and product-form mixers; warns above ``tol``."""
    gap = float(np.linalg.norm(beta_unitary(layer) - beta_unitary_product(layer)))
    if gap > tol:
        warnings.warn(
            f"mixer edges do not commute: product form differs from exp(-iW) by {gap:.3e}",
            RuntimeWarning,
            stacklevel=2,
        )
    return gap


def _summand_index(n: int) -> dict[PauliString, object]:
    return {s.pauli: s for s in b_operator_summands(n)}


def summand_to_edge_angles(per_summand: Mapping[PauliString, float], n: int) -> BetaLayer:
    """Per-edge view of a mixer given one angle per B summand."""
    n = check_register(n)
    known = _summand_index(n)
    dim = 2**n
    w = np.zeros((dim, dim), dtype=complex)
    for p, angle in per_summand.items():
        if p not in known:
            raise MaqaoaError(f"{p} is not a summand of B on {n} qubits")
        w += float(angle) * pauli_matrix(p)
    scale = max(float(np.abs(w).max()), 1.0)
    cutoff = 1e-14 * scale
    if np.abs(np.diag(w)).max(initial=0.0) > cutoff or np.abs(w.imag).max(initial=0.0) > cutoff:
        raise MaqaoaError("summand combination is not a real zero-diagonal adjacency matrix")
    edges = {}
    rows, cols = np.nonzero(np.abs(w) > cutoff)
    for i, j in zip(rows.tolist(), cols.tolist()):
        if i < j:
            if not is_hypercube_edge(i, j, n):
                raise MaqaoaError(f"entry ({i}, {j}) lies off the hypercube")
            edges[(i, j)] = float(w[i, j].real)
    return BetaLayer(n, edges)


def edge_to_summand_angles(layer: BetaLayer) -> dict[PauliString, float]:
    """Express a mixer's edge angles through the B summands.

    Along direction v an edge (u, u + 2^(n-v)) receives
    (a_v - sum_j b_vj (-1)^{u_j}) / 2 from the angles a_v on X_v/2 and b_vj on
    -X_v Z_j/2, so each direction is a small linear system. Raises if the
    edge pattern has no exact solution.
    """
    n = layer.n
    angles = layer.angles
    summands = b_operator_summands(n)
    out: dict[PauliString, float] = {}
    for v in range(1, n + 1):
        terms = [s for s in summands if s.flip == v]
        m = qubit_mask(v, n)
        lows = [u for u in range(2**n) if not u & m]
        rows = []
        for u in lows:
            rows.append([0.5 if s.control is None else -0.5 * (-1) ** bit(u, s.control, n) for s in terms])
        target = np.array([angles.get((u, u | m), 0.0) for u in lows])
        if not target.any():
            continue
        coeffs, *_ = np.linalg.lstsq(np.array(rows), target, rcond=None)
        residual = float(np.abs(np.array(rows) @ coeffs - target).max())
        if residual > 1e-12 * max(1.0, float(np.abs(target).max())):
            raise MaqaoaError(
                f"direction {v} edge angles are not a combination of B summands (residual {residual:.3e})"
            )
        for s, c in zip(terms, coeffs):
            if abs(c) > 1e-14:
                out[s.pauli] = float(c)
    return out


def half_layer_unitary(h: HalfLayer, tol: Tolerances = DEFAULT) -> np.ndarray:
    return gamma_unitary(h) if isinstance(h, GammaLayer) else beta_unitary(h, tol)


def schedule_unitary(s: Schedule, tol: Tolerances = DEFAULT) -> np.ndarray:
    dim = 2**s.n
    out = np.eye(dim, dtype=complex)
    for g, b in s.layers:
        out = np.exp(-1j * np.asarray(g.gamma))[:, None] * out
        if not b.is_zero:
            out = beta_unitary(b, tol) @ out
    return out


class TraceStep(NamedTuple):
    label: str
    state: np.ndarray


def run_schedule(
    s: Schedule, psi0: Sequence[complex] | None = None, tol: Tolerances = DEFAULT
) -> tuple[np.ndarray, list[TraceStep]]:
    """Apply every half-layer in order; returns the final state and the state after each half-layer."""
    psi = plus_state(s.n) if psi0 is None else check_statevector(psi0, tol)
    if psi.shape[0] != 2**s.n:
        raise DimensionError(f"state of length {psi.shape[0]} does not match {s.n} qubits")
    trace = []
    for idx, (g, b) in enumerate(s.layers, 1):
        psi = np.exp(-1j * np.asarray(g.gamma)) * psi
        trace.append(TraceStep(f"U(γ{idx}, C)", psi))
        if not b.is_zero:
            psi = beta_unitary(b, tol) @ psi
        trace.append(TraceStep(f"U(β{idx}, B)", psi))
    check_statevector(psi, tol)
    return psi, trace
