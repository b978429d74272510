import numpy as np
import pytest

from qadder.basis import basis_adder_circuit, compile_native
from qadder.errors import ConfigError, ParseError
from qadder.fidelity import landscape
from qadder.ga import random_genome, to_circuit
from qadder.io import (
    export_qasm,
    format_circuit,
    format_landscape_csv,
    gate_limited_reference,
    import_qasm,
    parse_circuit,
    parse_run_config,
)
from qadder.sim import Circuit, circuit_unitary, cnot, controlled_h, rot_x, toffoli

from qadder.basis import basis_adder_matrix


# --- circuit text format -----------------------------------------------------


def test_circuit_roundtrip_basis_adder():
    c = basis_adder_circuit()
    assert parse_circuit(format_circuit(c)) == c


def test_circuit_roundtrip_compiled():
    c = compile_native(basis_adder_circuit())
    parsed = parse_circuit(format_circuit(c))
    assert parsed == c
    assert np.allclose(circuit_unitary(parsed), circuit_unitary(c))


def test_circuit_roundtrip_random_genomes():
    rng = np.random.default_rng(44)
    for _ in range(10):
        c = to_circuit(random_genome(20, rng))
        assert parse_circuit(format_circuit(c)) == c


def test_circuit_format_text():
    c = Circuit([rot_x(1, np.pi), cnot(2, 3, negated=True), toffoli(1, 2, 3, (False, True))])
    text = format_circuit(c)
    assert text.splitlines() == [
        "ROT X 1 3.1415926535897931",
        "CNOT 2! 3",
        "TOFF 1 2! 3",
    ]


def test_circuit_parse_comments_and_blanks():
    text = "# header\n\nCNOT 1 2  # inline comment\n  CHAD 2 3\n"
    c = parse_circuit(text)
    assert c == Circuit([cnot(1, 2), controlled_h(2, 3)])


def test_circuit_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_circuit("CNOT 1 2\nBOGUS 1 2\n", path="f.txt")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_circuit("ROT W 1 0.5")
    with pytest.raises(ParseError):
        parse_circuit("CNOT 1 2!")  # negated target
    with pytest.raises(ParseError):
        parse_circuit("CNOT 1 1")  # duplicate qubits surface as parse errors


# --- QASM --------------------------------------------------------------------


def test_qasm_export_structure():
    c = compile_native(basis_adder_circuit())
    text = export_qasm(c)
    lines = text.splitlines()
    assert lines[0] == "OPENQASM 2.0;"
    assert lines[1] == 'include "qelib1.inc";'
    assert lines[2] == "qreg q[3];"
    assert lines[-1] == "measure q[2] -> c[0];"
    gate_lines = [ln for ln in lines if ln.startswith(("rx", "ry", "rz", "cx"))]
    assert len(gate_lines) == len(c)


def test_qasm_identity_circuit_has_no_gate_lines():
    lines = export_qasm(Circuit()).splitlines()
    assert [ln for ln in lines if ln.startswith(("rx", "ry", "rz", "cx"))] == []
    assert lines[-1].startswith("measure")


def test_qasm_roundtrip_random_circuits():
    rng = np.random.default_rng(55)
    for _ in range(10):
        c = to_circuit(random_genome(25, rng))
        back = import_qasm(export_qasm(c))
        assert np.max(np.abs(circuit_unitary(back) - circuit_unitary(c))) < 1e-10


def test_qasm_rejects_non_native():
    with pytest.raises(ValueError):
        export_qasm(basis_adder_circuit())


def test_qasm_import_rejects_unknown_statement():
    with pytest.raises(ParseError):
        import_qasm("OPENQASM 2.0;\nh q[0];\n")


# --- landscape CSV -------------------------------------------------------------


def test_landscape_csv_shape_and_summary():
    ls = landscape(basis_adder_matrix(), 9)
    text = format_landscape_csv(ls)
    lines = text.splitlines()
    assert lines[0] == "theta1,theta2,fidelity"
    data = [ln for ln in lines if not ln.startswith(("theta1", "#"))]
    assert len(data) == 81
    # values round-trip with at least 12 significant digits
    first = data[0].split(",")
    assert float(first[2]) == pytest.approx(ls.samples[0, 0], abs=1e-14)
    summary = lines[-1]
    assert summary.startswith("# average=")
    avg = float(summary.split("average=")[1].split(",")[0])
    values = np.array([float(ln.split(",")[2]) for ln in data])
    assert avg == pytest.approx(float(np.mean(values)), abs=1e-12)
    minimum = float(summary.split("minimum=")[1].split(",")[0])
    assert minimum == pytest.approx(float(np.min(values)), abs=1e-12)


def test_landscape_csv_grid_coordinates():
    ls = landscape(basis_adder_matrix(), 5)
    lines = format_landscape_csv(ls).splitlines()[1:-1]
    t1 = sorted({float(ln.split(",")[0]) for ln in lines})
    assert np.allclose(t1, np.linspace(0, np.pi / 2, 5))


# --- run config ------------------------------------------------------------------


GOOD_CONFIG = """
p = 10
generations = 5
seed = 3
out_log = /tmp/x.log
out_circuit = /tmp/x.circ
out_landscape = /tmp/x.csv
"""


def test_config_defaults():
    cfg = parse_run_config(GOOD_CONFIG)
    assert cfg.ga.p == 10
    assert cfg.ga.mutation_threshold == 0.7
    assert cfg.ga.fitness_mode == "average"
    assert cfg.ga.grid_n == 51
    assert cfg.final_grid_n == 51
    assert cfg.initial_population_path is None


def test_config_unknown_key_rejected():
    with pytest.raises(ConfigError) as err:
        parse_run_config(GOOD_CONFIG + "bogus = 1\n")
    assert err.value.key == "bogus"


def test_config_missing_key_rejected():
    with pytest.raises(ConfigError) as err:
        parse_run_config("p = 10\ngenerations = 5\nseed = 0\n")
    assert err.value.key in ("out_log", "out_circuit", "out_landscape")


def test_config_bad_value_rejected():
    with pytest.raises(ConfigError):
        parse_run_config(GOOD_CONFIG + "grid_n = many\n")
    with pytest.raises(ConfigError):
        parse_run_config(GOOD_CONFIG + "fitness_mode = best\n")
    with pytest.raises(ConfigError):
        parse_run_config(GOOD_CONFIG.replace("p = 10", "p = 2"))


def test_config_duplicate_key_rejected():
    with pytest.raises(ConfigError):
        parse_run_config(GOOD_CONFIG + "p = 11\n")


# --- reference data ---------------------------------------------------------------


def test_gate_limited_reference_ships_published_rows():
    rows = gate_limited_reference()
    assert len(rows) == 6
    ideals = [float(r["classical_ideal"]) for r in rows]
    assert ideals == [0.802, 0.802, 0.854, 0.854, 0.854, 0.963]
    experimental = [float(r["experimental"]) for r in rows]
    assert experimental == [0.815, 0.749, 0.873, 0.853, 0.839, 0.935]
