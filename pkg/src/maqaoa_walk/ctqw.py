"""Continuous-time quantum walks on dynamic graphs.

A dynamic graph is an ordered list of (graph, time) pairs on 2^n vertices.
Each step evolves the walker by exp(-i A t / ||A||) with A the adjacency
matrix (self-loops on the diagonal) and ||A|| its spectral norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import DimensionError, MaqaoaError, ZeroAdjacencyError
from .linalg import check_statevector, herm_exp, plus_state, spectral_norm
from .maqaoa import TraceStep
from .operators import check_qubit, check_register, hypercube_edges, qubit_mask


def _items(x):
    return x.items() if isinstance(x, Mapping) else x


@dataclass(frozen=True)
class WeightedGraph:
    """Graph on 2^n vertices; ``edges`` maps (u, v) with u < v to a weight, ``loops`` maps v to a weight.

    Vertices without an edge or loop are isolated and pick up no phase.
    Zero weights are dropped.
    """

    n: int
    edges: tuple[tuple[tuple[int, int], float], ...] = ()
    loops: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        check_register(self.n)
        dim = 2**self.n
        edges: dict[tuple[int, int], float] = {}
        for (u, v), w in _items(self.edges):
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < dim and 0 <= v < dim):
                raise MaqaoaError(f"edge ({u}, {v}) has a vertex outside [0, {dim})")
            if u == v:
                raise MaqaoaError(f"edge ({u}, {v}) is a self-loop; list it under loops")
            key = (min(u, v), max(u, v))
            if key in edges:
                raise MaqaoaError(f"multi-edge {key}")
            if not math.isfinite(w):
                raise MaqaoaError(f"edge {key} has non-finite weight")
            edges[key] = w
        loops: dict[int, float] = {}
        for v, w in _items(self.loops):
            v, w = int(v), float(w)
            if not 0 <= v < dim:
                raise MaqaoaError(f"loop vertex {v} outside [0, {dim})")
            if v in loops:
                raise MaqaoaError(f"vertex {v} has two self-loops")
            if not math.isfinite(w):
                raise MaqaoaError(f"loop on {v} has non-finite weight")
            loops[v] = w
        object.__setattr__(self, "edges", tuple(sorted((k, w) for k, w in edges.items() if w != 0.0)))
        object.__setattr__(self, "loops", tuple(sorted((v, w) for v, w in loops.items() if w != 0.0)))

    @property
    def num_vertices(self) -> int:
        return 2**self.n

    @classmethod
    def unweighted(cls, n: int, edges: Sequence[tuple[int, int]] = (), loops: Sequence[int] = ()) -> "WeightedGraph":
        return cls(n, tuple((e, 1.0) for e in edges), tuple((v, 1.0) for v in loops))


@dataclass(frozen=True)
class DynamicGraph:
    n: int
    steps: tuple[tuple[WeightedGraph, float], ...] = ()

    def __post_init__(self):
        check_register(self.n)
        steps = []
        for i, (g, t) in enumerate(self.steps, 1):
            if not isinstance(g, WeightedGraph) or g.n != self.n:
                raise DimensionError(f"step {i} is not a graph on 2^{self.n} vertices")
            t = float(t)
            if not (math.isfinite(t) and t > 0):
                raise MaqaoaError(f"step {i} has non-positive time {t}")
            steps.append((g, t))
        object.__setattr__(self, "steps", tuple(steps))

    def __len__(self) -> int:
        return len(self.steps)


def adjacency(g: WeightedGraph) -> np.ndarray:
    dim = g.num_vertices
    a = np.zeros((dim, dim), dtype=complex)
    for (u, v), w in g.edges:
        a[u, v] = a[v, u] = w
    for v, w in g.loops:
        a[v, v] = w
    return a


def walk_unitary_step(g: WeightedGraph, t: float, tol: Tolerances = DEFAULT) -> np.ndarray:
    a = adjacency(g)
    norm = spectral_norm(a, tol)
    if norm == 0.0:
        raise ZeroAdjacencyError("cannot walk on a graph with zero adjacency matrix")
    return herm_exp(a, t / norm, tol)


def walk_step(g: WeightedGraph, t: float, psi, tol: Tolerances = DEFAULT) -> np.ndarray:
    psi = check_statevector(psi, tol)
    if psi.shape[0] != g.num_vertices:
        raise DimensionError(f"state of length {psi.shape[0]} cannot walk on {g.num_vertices} vertices")
    return walk_unitary_step(g, t, tol) @ psi


def run_walk(dg: DynamicGraph, psi0=None, tol: Tolerances = DEFAULT) -> tuple[np.ndarray, list[TraceStep]]:
    psi = plus_state(dg.n) if psi0 is None else check_statevector(psi0, tol)
    if psi.shape[0] != 2**dg.n:
        raise DimensionError(f"state of length {psi.shape[0]} does not match {dg.n} qubits")
    trace = []
    for i, (g, t) in enumerate(dg.steps, 1):
        psi = walk_step(g, t, psi, tol)
        trace.append(TraceStep(f"G{i} (t={t:.12g})", psi))
    return psi, trace


def walk_unitary(dg: DynamicGraph, tol: Tolerances = DEFAULT) -> np.ndarray:
    out = np.eye(2**dg.n, dtype=complex)
    for g, t in dg.steps:
        out = walk_unitary_step(g, t, tol) @ out
    return out


def _vertices_with(n: int, *qubits: int) -> list[int]:
    mask = sum(qubit_mask(q, n) for q in qubits)
    return [v for v in range(2**n) if v & mask == mask]


def gadget_h(q: int, n: int) -> DynamicGraph:
    """Loops on qubit-q-set vertices (3pi/2), qubit-q hypercube edges (pi/4), loops again (3pi/2)."""
    n = check_register(n)
    check_qubit(q, n)
    loops = WeightedGraph.unweighted(n, loops=_vertices_with(n, q))
    mix = WeightedGraph.unweighted(n, edges=hypercube_edges(n, [q]))
    return DynamicGraph(n, ((loops, 3 * math.pi / 2), (mix, math.pi / 4), (loops, 3 * math.pi / 2)))


def gadget_t(q: int, n: int) -> DynamicGraph:
    n = check_register(n)
    check_qubit(q, n)
    return DynamicGraph(n, ((WeightedGraph.unweighted(n, loops=_vertices_with(n, q)), 7 * math.pi / 4),))


def gadget_cx(control: int, target: int, n: int) -> DynamicGraph:
    """Swap edges inside the control-set block (pi/2), then loops on that block (3pi/2)."""
    n = check_register(n)
    check_qubit(control, n)
    check_qubit(target, n)
    if control == target:
        raise MaqaoaError(f"control and target coincide ({control})")
    tm = qubit_mask(target, n)
    block = _vertices_with(n, control)
    swaps = WeightedGraph.unweighted(n, edges=[(v, v | tm) for v in block if not v & tm])
    phase = WeightedGraph.unweighted(n, loops=block)
    return DynamicGraph(n, ((swaps, math.pi / 2), (phase, 3 * math.pi / 2)))
