"""Compile {H, T, CX} circuits into ma-QAOA schedules and convert to and from dynamic graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .ctqw import DynamicGraph, WeightedGraph, adjacency
from .errors import MaqaoaError, RestrictionError, ZeroAdjacencyError
from .linalg import spectral_norm
from .maqaoa import BetaLayer, GammaLayer, HalfLayer, Schedule, beta_hamiltonian
from .operators import (
    bit,
    check_qubit,
    check_register,
    hamming_weight,
    hypercube_edges,
    is_hypercube_edge,
    qubit_mask,
)

PI = math.pi
# Cost angle by Hamming weight mod 4; exp(-i eta) gives the phases (-1, -i, 1, i).
ETA = (PI, PI / 2, 0.0, 3 * PI / 2)
H_MIX_ANGLE = PI / 4
T_ANGLE = 7 * PI / 4
CX_SWAP_ANGLE = 3 * PI / 2
CX_PHASE_ANGLE = PI / 2

GATE_ARITY = {"H": 1, "T": 1, "CX": 2}

LayerFragment = tuple[HalfLayer, ...]


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        kind = str(self.kind).upper()
        if kind not in GATE_ARITY:
            raise MaqaoaError(f"unsupported gate {self.kind!r}; expected one of H, T, CX")
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != GATE_ARITY[kind]:
            raise MaqaoaError(f"{kind} takes {GATE_ARITY[kind]} qubit(s), got {len(qubits)}")
        if kind == "CX" and qubits[0] == qubits[1]:
            raise MaqaoaError("control equals target")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", qubits)

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.qubits)])


def H(q: int) -> Gate:
    return Gate("H", (q,))


def T(q: int) -> Gate:
    return Gate("T", (q,))


def CX(control: int, target: int) -> Gate:
    return Gate("CX", (control, target))


@dataclass(frozen=True)
class GateCircuit:
    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        check_register(self.n)
        gates = tuple(self.gates)
        for g in gates:
            for q in g.qubits:
                if not 1 <= q <= self.n:
                    raise MaqaoaError(f"gate '{g}' uses qubit {q} outside [1, {self.n}]")
        object.__setattr__(self, "gates", gates)

    def __len__(self) -> int:
        return len(self.gates)


def fragment_h(qubits: Iterable[int], n: int) -> LayerFragment:
    """H on every qubit in ``qubits``: cost phases, hypercube mix, the same cost phases."""
    n = check_register(n)
    s = sorted({check_qubit(q, n) for q in qubits})
    if not s:
        raise MaqaoaError("fragment_h needs at least one qubit")
    gamma = GammaLayer(n, tuple(ETA[hamming_weight(z, s, n) % 4] for z in range(2**n)))
    beta = BetaLayer(n, {e: H_MIX_ANGLE for e in hypercube_edges(n, s)})
    return (gamma, beta, gamma)


def fragment_t(q: int, n: int) -> LayerFragment:
    n = check_register(n)
    check_qubit(q, n)
    return (GammaLayer(n, tuple(T_ANGLE if bit(z, q, n) else 0.0 for z in range(2**n))),)


def fragment_cx(control: int, target: int, n: int, phase_first: bool = False) -> LayerFragment:
    """Swap the target inside the control block (picks up a factor i), then undo it with phase -i.

    Both orders give the same unitary; the default matches the order of the
    worked example schedule.
    """
    n = check_register(n)
    check_qubit(control, n)
    check_qubit(target, n)
    if control == target:
        raise MaqaoaError("control equals target")
    cm, tm = qubit_mask(control, n), qubit_mask(target, n)
    beta = BetaLayer(n, {(u, u | tm): CX_SWAP_ANGLE for u in range(2**n) if u & cm and not u & tm})
    gamma = GammaLayer(n, tuple(CX_PHASE_ANGLE if z & cm else 0.0 for z in range(2**n)))
    return (gamma, beta) if phase_first else (beta, gamma)


def gate_fragment(gate: Gate, n: int) -> LayerFragment:
    if gate.kind == "H":
        return fragment_h(gate.qubits, n)
    if gate.kind == "T":
        return fragment_t(gate.qubits[0], n)
    return fragment_cx(gate.qubits[0], gate.qubits[1], n)


def _merge_gammas(stream: list[HalfLayer]) -> list[HalfLayer]:
    out: list[HalfLayer] = []
    for h in stream:
        if isinstance(h, BetaLayer) and h.is_zero:
            continue
        if isinstance(h, GammaLayer) and out and isinstance(out[-1], GammaLayer):
            out[-1] = out[-1] + h
        else:
            out.append(h)
    return out


def pack(fragments: Sequence[Sequence[HalfLayer]], n: int, merge_gamma: bool = False) -> Schedule:
    """Concatenate half-layers into strictly alternating (gamma, beta) pairs.

    Zero half-layers are inserted wherever two of the same kind would meet, at
    a leading beta and after a trailing gamma. With ``merge_gamma`` the zero
    mixers are dropped first and neighbouring cost half-layers are added
    together, which never changes the unitary.
    """
    n = check_register(n)
    stream = [h for frag in fragments for h in frag]
    for h in stream:
        if h.n != n:
            raise MaqaoaError(f"half-layer on {h.n} qubits in a {n}-qubit schedule")
    if merge_gamma:
        stream = _merge_gammas(stream)
    out: list[HalfLayer] = []
    for h in stream:
        want_gamma = len(out) % 2 == 0
        if isinstance(h, GammaLayer) != want_gamma:
            out.append(GammaLayer.zeros(n) if want_gamma else BetaLayer.zeros(n))
        out.append(h)
    if len(out) % 2:
        out.append(BetaLayer.zeros(n))
    if not out:
        out = [GammaLayer.zeros(n), BetaLayer.zeros(n)]
    return Schedule(n, tuple(zip(out[::2], out[1::2])))


def transpile(circuit: GateCircuit, merge_gamma: bool = False) -> Schedule:
    return pack([gate_fragment(g, circuit.n) for g in circuit.gates], circuit.n, merge_gamma)


class LayerCount(NamedTuple):
    pairs: int
    bound: int

    @property
    def within_bound(self) -> bool:
        return self.pairs <= self.bound


def layer_bound(num_gates: int) -> int:
    """ceil(1.5 N); an empty circuit still occupies one identity layer."""
    return max(1, math.ceil(1.5 * num_gates))


def layer_count(circuit: GateCircuit, merge_gamma: bool = False) -> LayerCount:
    """Number of (gamma, beta) pairs in the transpiled schedule against the 1.5 N bound.

    Only the merged schedule is guaranteed to respect the bound: without
    merging, back-to-back H gates cost two pairs each.
    """
    return LayerCount(transpile(circuit, merge_gamma).depth, layer_bound(len(circuit)))


def schedule_to_dynamic_graph(s: Schedule, tol: Tolerances = DEFAULT) -> DynamicGraph:
    """One loops-only or edges-only graph per nonzero half-layer, timed so t/||A|| = 1."""
    steps = []
    for h in s.half_layers:
        if h.is_zero:
            continue
        if isinstance(h, GammaLayer):
            g = WeightedGraph(s.n, loops=tuple((z, a) for z, a in enumerate(h.gamma) if a))
            t = spectral_norm(np.diag(np.asarray(h.gamma, dtype=complex)), tol)
        else:
            g = WeightedGraph(s.n, edges=h.edges)
            t = spectral_norm(beta_hamiltonian(h), tol)
        steps.append((g, t))
    return DynamicGraph(s.n, tuple(steps))


def step_to_half_layer(g: WeightedGraph, t: float, tol: Tolerances = DEFAULT) -> HalfLayer:
    """The ma-QAOA half-layer equal to one walk step, or RestrictionError if none exists."""
    if g.loops and g.edges:
        (u, v), _ = g.edges[0]
        raise RestrictionError(
            f"graph mixes self-loops with edge ({u}, {v}); ma-QAOA steps are loops-only or edges-only"
        )
    for (u, v), _ in g.edges:
        if not is_hypercube_edge(u, v, g.n):
            raise RestrictionError(f"edge ({u}, {v}) joins vertices differing in more than one bit")
    norm = spectral_norm(adjacency(g), tol)
    if norm == 0.0:
        raise ZeroAdjacencyError("cannot convert a graph with zero adjacency matrix")
    scale = t / norm
    if g.edges:
        return BetaLayer(g.n, tuple((e, w * scale) for e, w in g.edges))
    weights = dict(g.loops)
    return GammaLayer(g.n, tuple(weights.get(z, 0.0) * scale for z in range(2**g.n)))


def dynamic_graph_to_schedule(dg: DynamicGraph, tol: Tolerances = DEFAULT) -> Schedule:
    return pack([(step_to_half_layer(g, t, tol),) for g, t in dg.steps], dg.n)
