"""Circuit text format, JSON schedules and dynamic graphs, and human-readable rendering.

Circuit files look like::

    # H on qubit 1, T on qubit 2, then CX controlled by qubit 1
    qubits 2
    H 1
    T 2
    CX 1 2
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any

import numpy as np

from .config import DEFAULT, MAX_QUBITS, Tolerances
from .ctqw import DynamicGraph, WeightedGraph
from .errors import CircuitParseError, MaqaoaError
from .maqaoa import BetaLayer, GammaLayer, Schedule
from .operators import hypercube_edges
from .transpiler import GATE_ARITY, Gate, GateCircuit

FORMAT_TAG = "maqaoa-walk/1"


def parse_circuit(text: str) -> GateCircuit:
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if n is None:
            if tokens[0].lower() != "qubits" or len(tokens) != 2:
                raise CircuitParseError(f"expected 'qubits N', got '{' '.join(tokens)}'", lineno, tokens[0])
            n = _parse_int(tokens[1], lineno)
            if not 1 <= n <= MAX_QUBITS:
                raise CircuitParseError(f"qubit count {n} outside [1, {MAX_QUBITS}]", lineno, tokens[1])
            continue
        kind = tokens[0].upper()
        if kind not in GATE_ARITY:
            raise CircuitParseError(f"unknown gate '{tokens[0]}'", lineno, tokens[0])
        args = tokens[1:]
        if len(args) != GATE_ARITY[kind]:
            raise CircuitParseError(f"{kind} takes {GATE_ARITY[kind]} qubit(s), got {len(args)}", lineno, kind)
        qubits = []
        for tok in args:
            q = _parse_int(tok, lineno)
            if not 1 <= q <= n:
                raise CircuitParseError(f"qubit {q} outside [1, {n}]", lineno, tok)
            qubits.append(q)
        if kind == "CX" and qubits[0] == qubits[1]:
            raise CircuitParseError("control equals target", lineno, args[1])
        gates.append(Gate(kind, tuple(qubits)))
    if n is None:
        raise CircuitParseError("missing 'qubits N' header")
    return GateCircuit(n, tuple(gates))


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise CircuitParseError(f"expected an integer, got '{tok}'", lineno, tok) from None


def format_circuit(circuit: GateCircuit) -> str:
    return "\n".join([f"qubits {circuit.n}", *map(str, circuit.gates)]) + "\n"


def schedule_to_dict(s: Schedule) -> dict[str, Any]:
    return {
        "format": FORMAT_TAG,
        "n": s.n,
        "layers": [
            {
                "gamma": list(g.gamma),
                "beta": [{"u": u, "w": w, "angle": a} for (u, w), a in b.edges],
            }
            for g, b in s.layers
        ],
    }


def _check_tag(d: dict, what: str) -> None:
    if not isinstance(d, dict):
        raise MaqaoaError(f"{what} JSON must be an object")
    tag = d.get("format", FORMAT_TAG)
    if tag != FORMAT_TAG:
        raise MaqaoaError(f"unsupported format {tag!r}; expected {FORMAT_TAG!r}")


def schedule_from_dict(d: dict[str, Any]) -> Schedule:
    _check_tag(d, "schedule")
    try:
        n = int(d["n"])
        layers = tuple(
            (
                GammaLayer(n, tuple(layer["gamma"])),
                BetaLayer(n, tuple(((e["u"], e["w"]), e["angle"]) for e in layer.get("beta", []))),
            )
            for layer in d["layers"]
        )
    except (KeyError, TypeError) as exc:
        raise MaqaoaError(f"malformed schedule JSON: missing or invalid field {exc}") from None
    return Schedule(n, layers)


def dynamic_graph_to_dict(dg: DynamicGraph) -> dict[str, Any]:
    return {
        "format": FORMAT_TAG,
        "n": dg.n,
        "steps": [
            {
                "time": t,
                "loops": [{"v": v, "w": w} for v, w in g.loops],
                "edges": [{"u": u, "v": v, "w": w} for (u, v), w in g.edges],
            }
            for g, t in dg.steps
        ],
    }


def dynamic_graph_from_dict(d: dict[str, Any]) -> DynamicGraph:
    _check_tag(d, "dynamic graph")
    try:
        n = int(d["n"])
        steps = tuple(
            (
                WeightedGraph(
                    n,
                    edges=tuple(((e["u"], e["v"]), e.get("w", 1.0)) for e in step.get("edges", [])),
                    loops=tuple((lp["v"], lp.get("w", 1.0)) for lp in step.get("loops", [])),
                ),
                step["time"],
            )
            for step in d.get("steps", [])
        )
    except (KeyError, TypeError) as exc:
        raise MaqaoaError(f"malformed dynamic graph JSON: missing or invalid field {exc}") from None
    return DynamicGraph(n, steps)


def dumps(d: dict[str, Any]) -> str:
    return json.dumps(d, indent=2) + "\n"


def format_angle(x: float, tol: Tolerances = DEFAULT) -> str:
    """Exact multiples of pi/4 print symbolically (``7π/4``), anything else as a decimal."""
    quarters = x / (math.pi / 4)
    k = round(quarters)
    if abs(quarters - k) * (math.pi / 4) > tol.pi_fraction:
        return f"{x:.12g}"
    if k == 0:
        return "0"
    f = Fraction(k, 4)
    num, den = f.numerator, f.denominator
    head = {1: "π", -1: "-π"}.get(num, f"{num}π")
    return head if den == 1 else f"{head}/{den}"


def _vector(values) -> str:
    return "(" + ", ".join(format_angle(v) for v in values) + ")"


def schedule_rows(s: Schedule) -> list[tuple[str, list[float]]]:
    """One (label, angle vector) row per half-layer; mixer vectors follow sorted hypercube edges."""
    order = hypercube_edges(s.n)
    rows = []
    for i, (g, b) in enumerate(s.layers, 1):
        rows.append((f"U(γ{i}, C)", list(g.gamma)))
        angles = b.angles
        rows.append((f"U(β{i}, B)", [angles.get(e, 0.0) for e in order]))
    return rows


def render_table(s: Schedule) -> str:
    rows = [(label, _vector(v)) for label, v in schedule_rows(s)]
    width = max(len("U"), *(len(label) for label, _ in rows))
    edges = ", ".join(f"{u}-{w}" for u, w in hypercube_edges(s.n))
    lines = [f"{'U':<{width}} | Angle vector"]
    lines += [f"{label:<{width}} | {vec}" for label, vec in rows]
    lines.append(f"β entries by edge: {edges}")
    return "\n".join(lines) + "\n"


def render_csv(s: Schedule) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["half_layer", "operator", "position", "angle", "angle_label"])
    order = hypercube_edges(s.n)
    for i, (label, values) in enumerate(schedule_rows(s), 1):
        positions = [str(z) for z in range(2**s.n)] if "γ" in label else [f"{u}-{v}" for u, v in order]
        for pos, a in zip(positions, values):
            w.writerow([i, label, pos, repr(float(a)), format_angle(a)])
    return out.getvalue()


def basis_label(z: int, n: int) -> str:
    return "|" + format(z, f"0{n}b") + "⟩"


def format_complex(c: complex, chop: float = 1e-13) -> str:
    re = 0.0 if abs(c.real) < chop else c.real
    im = 0.0 if abs(c.imag) < chop else c.imag
    return f"{re + 0.0:.12g}{im + 0.0:+.12g}j"


def render_amplitudes(psi: np.ndarray) -> str:
    n = int(psi.shape[0]).bit_length() - 1
    return "".join(f"{basis_label(z, n)}  {format_complex(a)}\n" for z, a in enumerate(psi))
