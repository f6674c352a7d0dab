import json
import math

import numpy as np
import pytest

from conftest import WORKED_SCHEDULE, random_schedule
from maqaoa_walk.cli import main
from maqaoa_walk.ctqw import gadget_cx, gadget_h
from maqaoa_walk.errors import CircuitParseError, MaqaoaError
from maqaoa_walk.formats import (
    basis_label,
    dynamic_graph_from_dict,
    dynamic_graph_to_dict,
    format_angle,
    format_circuit,
    format_complex,
    parse_circuit,
    render_csv,
    render_table,
    schedule_from_dict,
    schedule_to_dict,
)
from maqaoa_walk.linalg import basis_state
from maqaoa_walk.maqaoa import schedule_unitary
from maqaoa_walk.transpiler import CX, H, T, GateCircuit, transpile
from maqaoa_walk.verify import simulate_gates

PI = math.pi

WORKED_TABLE = """\
U        | Angle vector
U(γ1, C) | (π, π, π/2, π/2)
U(β1, B) | (0, π/4, π/4, 0)
U(γ2, C) | (π, π, π/2, π/2)
U(β2, B) | (0, 0, 0, 0)
U(γ3, C) | (0, 7π/4, 0, 7π/4)
U(β3, B) | (0, 0, 0, 3π/2)
U(γ4, C) | (0, 0, π/2, π/2)
U(β4, B) | (0, 0, 0, 0)
β entries by edge: 0-1, 0-2, 1-3, 2-3
"""


def test_parse_circuit_example(fixtures):
    c = parse_circuit((fixtures / "example.txt").read_text())
    assert c == GateCircuit(2, (H(1), T(2), CX(1, 2)))
    assert parse_circuit(format_circuit(c)) == c


def test_parse_circuit_ignores_comments_and_case():
    c = parse_circuit("# header\n\nQUBITS 3\nh 2  # inline\ncx 3 1\n")
    assert c == GateCircuit(3, (H(2), CX(3, 1)))


@pytest.mark.parametrize(
    "text, message, line",
    [
        ("qubits 2\nCX 1 1\n", "control equals target", 2),
        ("qubits 2\nH 3\n", "outside", 2),
        ("qubits 2\nS 1\n", "unknown gate", 2),
        ("qubits 2\nH 1 2\n", "takes 1", 2),
        ("qubits 2\nT x\n", "integer", 2),
        ("H 1\n", "qubits N", 1),
        ("qubits 13\n", "outside", 1),
        ("# nothing\n", "missing", None),
    ],
)
def test_parse_circuit_errors(text, message, line):
    with pytest.raises(CircuitParseError, match=message) as exc:
        parse_circuit(text)
    assert exc.value.line == line
    if line is not None:
        assert f"line {line}" in str(exc.value)


def test_schedule_json_round_trip(fixtures):
    assert schedule_from_dict(json.loads((fixtures / "worked_schedule.json").read_text())) == WORKED_SCHEDULE
    s = random_schedule(np.random.default_rng(0), 3, 3)
    assert schedule_from_dict(json.loads(json.dumps(schedule_to_dict(s)))) == s


def test_dynamic_graph_json_round_trip():
    for dg in (gadget_h(1, 2), gadget_cx(2, 1, 3)):
        assert dynamic_graph_from_dict(json.loads(json.dumps(dynamic_graph_to_dict(dg)))) == dg


def test_json_rejects_malformed_input():
    with pytest.raises(MaqaoaError, match="unsupported format"):
        schedule_from_dict({"format": "other", "n": 1, "layers": []})
    with pytest.raises(MaqaoaError, match="malformed"):
        schedule_from_dict({"n": 1})
    with pytest.raises(MaqaoaError, match="malformed"):
        dynamic_graph_from_dict({"n": 1, "steps": [{"loops": []}]})


@pytest.mark.parametrize(
    "x, label",
    [(0.0, "0"), (PI, "π"), (PI / 4, "π/4"), (7 * PI / 4, "7π/4"), (3 * PI / 2, "3π/2"), (-PI / 2, "-π/2"), (1.0, "1")],
)
def test_format_angle(x, label):
    assert format_angle(x) == label


def test_render_table_matches_worked_example():
    assert render_table(WORKED_SCHEDULE) == WORKED_TABLE


def test_render_csv():
    rows = render_csv(WORKED_SCHEDULE).splitlines()
    assert rows[0] == "half_layer,operator,position,angle,angle_label"
    assert len(rows) == 1 + 8 * 4
    assert rows[1].startswith("1,\"U(γ1, C)\",0,") and rows[1].endswith(",π")


def test_amplitude_formatting():
    assert basis_label(1, 2) == "|01⟩"
    assert format_complex(1e-17 - 0.5j) == "0-0.5j"
    assert format_complex(-1e-17 + 0j) == "0+0j"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_transpile_table(capsys, fixtures):
    code, out, _ = run(capsys, "transpile", str(fixtures / "example.txt"), "--format", "table")
    assert code == 0 and out == WORKED_TABLE


def test_cli_transpile_json_and_out(capsys, fixtures, tmp_path):
    target = tmp_path / "s.json"
    code, out, _ = run(capsys, "transpile", str(fixtures / "example.txt"), "--out", str(target))
    assert code == 0 and out == ""
    assert schedule_from_dict(json.loads(target.read_text())) == WORKED_SCHEDULE
    code, out, _ = run(capsys, "transpile", str(fixtures / "example.txt"), "--format", "csv")
    assert out == render_csv(WORKED_SCHEDULE)


def test_cli_transpile_is_deterministic(capsys, fixtures):
    outs = {run(capsys, "transpile", str(fixtures / "three_qubit.txt"))[1] for _ in range(3)}
    assert len(outs) == 1


def test_cli_simulate(capsys, fixtures):
    code, out, _ = run(capsys, "simulate", "--circuit", str(fixtures / "example.txt"))
    assert code == 0
    assert out.splitlines() == ["|00⟩  0.707106781187+0j", "|01⟩  0.5+0.5j", "|10⟩  0+0j", "|11⟩  0+0j"]
    code, out, _ = run(capsys, "simulate", "--schedule", str(fixtures / "worked_schedule.json"), "--trace")
    assert code == 0
    assert out.count("after U(") == 8 and "after U(β1, B)" in out


def test_cli_simulate_bad_init(capsys, fixtures):
    code, _, err = run(capsys, "simulate", "--circuit", str(fixtures / "example.txt"), "--init", "zero")
    assert code == 2 and "init" in err


def test_cli_walk_gadgets(capsys, fixtures):
    code, out, _ = run(capsys, "walk", str(fixtures / "gadget_cx_1_2_n2.json"), "--init", "basis:2")
    assert code == 0 and "|11⟩  1+0j" in out
    code, out, _ = run(capsys, "walk", str(fixtures / "empty_walk.json"), "--init", "basis:1")
    assert out.splitlines()[1] == "|01⟩  1+0j"


def test_cli_walk_zero_adjacency(capsys, fixtures):
    code, _, err = run(capsys, "walk", str(fixtures / "zero_adjacency.json"))
    assert code == 2 and "zero" in err


def test_cli_verify(capsys, fixtures):
    code, out, _ = run(capsys, "verify", str(fixtures / "example.txt"))
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", str(fixtures / "three_qubit.txt"), "--json")
    report = json.loads(out)
    assert code == 0 and report["passed"] and report["distance"] <= 1e-9
    code, out, _ = run(capsys, "verify", str(fixtures / "h_only.txt"), "--tol", "-1")
    assert code == 1 and "FAIL" in out


def test_cli_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("qubits 2\nCX 1 1\n")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "control equals target, line 2" in err
    code, _, err = run(capsys, "transpile", str(tmp_path / "missing.txt"))
    assert code == 2


def test_cli_convert_round_trip(capsys, fixtures, tmp_path):
    walk = tmp_path / "walk.json"
    code, _, _ = run(capsys, "convert", str(fixtures / "worked_schedule.json"), "--out", str(walk))
    assert code == 0 and len(json.loads(walk.read_text())["steps"]) == 6
    code, out, _ = run(capsys, "convert", str(walk))
    back = schedule_from_dict(json.loads(out))
    assert np.linalg.norm(schedule_unitary(back) - schedule_unitary(WORKED_SCHEDULE)) <= 1e-10


def test_cli_convert_restriction_error(capsys, fixtures):
    code, _, err = run(capsys, "convert", str(fixtures / "non_hypercube_edge.json"))
    assert code == 2 and "(0, 3)" in err


def test_cli_gadget_matches_fixture(capsys, fixtures):
    for args, name in ((["H", "1", "--n", "1"], "gadget_h_1_n1.json"), (["CX", "1", "2", "--n", "2"], "gadget_cx_1_2_n2.json")):
        code, out, _ = run(capsys, "gadget", *args)
        assert code == 0 and json.loads(out) == json.loads((fixtures / name).read_text())
    code, _, err = run(capsys, "gadget", "CX", "1", "--n", "2")
    assert code == 2


def test_transpile_then_simulate_matches_gate_simulation(fixtures):
    circuit = parse_circuit((fixtures / "three_qubit.txt").read_text())
    u = schedule_unitary(transpile(circuit))
    for z in range(2**circuit.n):
        got = u @ basis_state(circuit.n, z)
        ref = simulate_gates(circuit, basis_state(circuit.n, z))
        # transpiled columns agree up to one global phase shared by every input
        if z == 0:
            phase = np.vdot(ref, got) / abs(np.vdot(ref, got))
        assert np.linalg.norm(got - phase * ref) <= 1e-10


def test_cli_single_gate_circuits(capsys, fixtures):
    code, out, _ = run(capsys, "simulate", "--circuit", str(fixtures / "t_only.txt"), "--init", "basis:0")
    assert code == 0 and out.splitlines() == ["|0⟩  1+0j", "|1⟩  0+0j"]
    code, out, _ = run(capsys, "simulate", "--circuit", str(fixtures / "h_only.txt"), "--init", "basis:0")
    amps = [complex(line.split()[1]) for line in out.splitlines()]
    # equal magnitudes with equal phases: |+> up to a global phase
    assert all(abs(abs(a) - 2**-0.5) <= 1e-10 for a in amps) and abs(amps[0] - amps[1]) <= 1e-10


def test_cli_empty_circuit(capsys, fixtures):
    code, out, _ = run(capsys, "transpile", str(fixtures / "empty.txt"), "--format", "table")
    assert code == 0
    assert out.splitlines()[1:3] == ["U(γ1, C) | (0, 0)", "U(β1, B) | (0)"]


def test_cli_basis_index_out_of_range(capsys, fixtures):
    code, _, err = run(capsys, "simulate", "--circuit", str(fixtures / "t_only.txt"), "--init", "basis:5")
    assert code == 2 and err.startswith("error:")
