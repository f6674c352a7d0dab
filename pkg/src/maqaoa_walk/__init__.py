"""Multi-angle QAOA as a restriction of continuous-time quantum walks on dynamic graphs.

Compiles circuits over {H, T, CX} into ma-QAOA angle schedules, simulates
schedules and dynamic-graph walks on dense statevectors, and checks every
construction against directly built gate matrices.
"""

from .config import DEFAULT, Tolerances
from .ctqw import DynamicGraph, WeightedGraph, gadget_cx, gadget_h, gadget_t, run_walk, walk_unitary
from .errors import MaqaoaError, RestrictionError
from .maqaoa import BetaLayer, GammaLayer, Schedule, run_schedule, schedule_unitary
from .transpiler import CX, H, T, Gate, GateCircuit, layer_count, pack, transpile
from .verify import check_equivalence, reference_gate_unitary

__all__ = [
    "BetaLayer",
    "CX",
    "DEFAULT",
    "DynamicGraph",
    "GammaLayer",
    "Gate",
    "GateCircuit",
    "H",
    "MaqaoaError",
    "RestrictionError",
    "Schedule",
    "T",
    "Tolerances",
    "WeightedGraph",
    "check_equivalence",
    "gadget_cx",
    "gadget_h",
    "gadget_t",
    "layer_count",
    "pack",
    "reference_gate_unitary",
    "run_schedule",
    "run_walk",
    "schedule_unitary",
    "transpile",
    "walk_unitary",
]
