"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage, parse or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import formats
from .ctqw import gadget_cx, gadget_h, gadget_t, run_walk
from .errors import MaqaoaError
from .linalg import basis_state, plus_state
from .maqaoa import run_schedule, schedule_unitary
from .transpiler import dynamic_graph_to_schedule, schedule_to_dynamic_graph, transpile
from .verify import check_equivalence, reference_gate_unitary

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _load_json(path: str) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise MaqaoaError(f"{path}: invalid JSON ({exc})") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _initial_state(spec: str, n: int) -> np.ndarray:
    if spec == "plus":
        return plus_state(n)
    if spec.startswith("basis:"):
        try:
            z = int(spec.split(":", 1)[1])
        except ValueError:
            raise MaqaoaError(f"invalid basis index in --init {spec!r}") from None
        return basis_state(n, z)
    raise MaqaoaError(f"unknown --init {spec!r}; use 'plus' or 'basis:Z'")


def _print_run(final: np.ndarray, trace, show_trace: bool) -> None:
    if show_trace:
        for label, state in trace:
            sys.stdout.write(f"after {label}\n{formats.render_amplitudes(state)}\n")
        sys.stdout.write("final\n")
    sys.stdout.write(formats.render_amplitudes(final))


def cmd_transpile(args) -> int:
    circuit = formats.parse_circuit(_read(args.circuit))
    schedule = transpile(circuit, merge_gamma=args.merge_gamma)
    if args.format == "json":
        text = formats.dumps(formats.schedule_to_dict(schedule))
    elif args.format == "csv":
        text = formats.render_csv(schedule)
    else:
        text = formats.render_table(schedule)
    _emit(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.circuit:
        schedule = transpile(formats.parse_circuit(_read(args.circuit)))
    else:
        schedule = formats.schedule_from_dict(_load_json(args.schedule))
    final, trace = run_schedule(schedule, _initial_state(args.init, schedule.n))
    _print_run(final, trace, args.trace)
    return EXIT_OK


def cmd_walk(args) -> int:
    dg = formats.dynamic_graph_from_dict(_load_json(args.dynamic_graph))
    final, trace = run_walk(dg, _initial_state(args.init, dg.n))
    _print_run(final, trace, args.trace)
    return EXIT_OK


def cmd_verify(args) -> int:
    circuit = formats.parse_circuit(_read(args.circuit))
    schedule = transpile(circuit, merge_gamma=args.merge_gamma)
    report = check_equivalence(schedule_unitary(schedule), reference_gate_unitary(circuit), args.tol)
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(f"{len(circuit)} gate(s) on {circuit.n} qubit(s) -> {schedule.depth} layer(s)\n")
        sys.stdout.write(report.render() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_convert(args) -> int:
    data = _load_json(args.input)
    if "layers" in data:
        out = formats.dynamic_graph_to_dict(schedule_to_dynamic_graph(formats.schedule_from_dict(data)))
    elif "steps" in data:
        out = formats.schedule_to_dict(dynamic_graph_to_schedule(formats.dynamic_graph_from_dict(data)))
    else:
        raise MaqaoaError(f"{args.input}: neither a schedule ('layers') nor a dynamic graph ('steps')")
    _emit(formats.dumps(out), args.out)
    return EXIT_OK


def cmd_gadget(args) -> int:
    builders = {"H": (gadget_h, 1), "T": (gadget_t, 1), "CX": (gadget_cx, 2)}
    build, arity = builders[args.gate]
    if len(args.qubits) != arity:
        raise MaqaoaError(f"{args.gate} gadget takes {arity} qubit(s)")
    _emit(formats.dumps(formats.dynamic_graph_to_dict(build(*args.qubits, args.n))), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="maqaoa-walk",
        description="Compile {H, T, CX} circuits to multi-angle QAOA schedules and simulate them as quantum walks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transpile", help="compile a circuit file into a schedule")
    t.add_argument("circuit", help="circuit file, or - for stdin")
    t.add_argument("--format", choices=["json", "csv", "table"], default="json")
    t.add_argument("--out", help="write to this path instead of stdout")
    t.add_argument("--merge-gamma", action="store_true", help="add neighbouring cost half-layers together")
    t.set_defaults(func=cmd_transpile)

    s = sub.add_parser("simulate", help="run a schedule (or a circuit via its schedule) on a statevector")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--circuit")
    src.add_argument("--schedule")
    s.add_argument("--init", default="plus", help="'plus' (default) or 'basis:Z'")
    s.add_argument("--trace", action="store_true", help="print the state after every half-layer")
    s.set_defaults(func=cmd_simulate)

    w = sub.add_parser("walk", help="run a dynamic-graph quantum walk")
    w.add_argument("dynamic_graph")
    w.add_argument("--init", default="plus")
    w.add_argument("--trace", action="store_true", help="print the state after every graph")
    w.set_defaults(func=cmd_walk)

    v = sub.add_parser("verify", help="check a transpiled circuit against its gate product")
    v.add_argument("circuit")
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--json", action="store_true")
    v.add_argument("--merge-gamma", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("convert", help="schedule JSON <-> dynamic-graph JSON")
    c.add_argument("input")
    c.add_argument("--out")
    c.set_defaults(func=cmd_convert)

    g = sub.add_parser("gadget", help="emit the dynamic graph of one gate")
    g.add_argument("gate", choices=["H", "T", "CX"])
    g.add_argument("qubits", type=int, nargs="+")
    g.add_argument("--n", type=int, required=True, help="register size")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gadget)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MaqaoaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
