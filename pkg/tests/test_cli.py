import numpy as np
import pytest

from qadder.basis import basis_adder_circuit, compile_native
from qadder.cli import (
    EXIT_DOMAIN,
    EXIT_IO,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    main,
)
from qadder.io import import_qasm, write_circuit
from qadder.sim import circuit_unitary


@pytest.fixture
def native_circuit_file(tmp_path):
    path = tmp_path / "basis_native.txt"
    write_circuit(compile_native(basis_adder_circuit()), str(path))
    return str(path)


@pytest.fixture
def raw_circuit_file(tmp_path):
    path = tmp_path / "basis_raw.txt"
    write_circuit(basis_adder_circuit(), str(path))
    return str(path)


# --- landscape ----------------------------------------------------------------


def test_landscape_basis(tmp_path, capsys):
    out = tmp_path / "ls.csv"
    assert main(["landscape", "--adder", "basis", "--grid", "51", "--out", str(out)]) == EXIT_OK
    printed = capsys.readouterr().out
    avg = float(printed.split("average=")[1].splitlines()[0])
    minimum = float(printed.split("minimum=")[1].splitlines()[0])
    assert 0.944 <= avg <= 0.954
    assert 0.849 <= minimum <= 0.859
    lines = out.read_text().splitlines()
    assert len([ln for ln in lines if not ln.startswith(("#", "theta1"))]) == 51 * 51


def test_landscape_plus(capsys):
    assert main(["landscape", "--adder", "plus", "--grid", "51"]) == EXIT_OK
    printed = capsys.readouterr().out
    avg = float(printed.split("average=")[1].splitlines()[0])
    minimum = float(printed.split("minimum=")[1].splitlines()[0])
    assert 0.897 <= avg <= 0.907
    assert minimum == pytest.approx(0.5, abs=1e-9)


def test_landscape_tiny_grid_all_corners(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert main(["landscape", "--adder", "basis", "--grid", "2", "--out", str(out)]) == EXIT_OK
    rows = [ln for ln in out.read_text().splitlines() if not ln.startswith(("#", "theta1"))]
    assert len(rows) == 4
    assert all(float(r.split(",")[2]) == pytest.approx(1.0, abs=1e-10) for r in rows)


def test_landscape_from_circuit_file(native_circuit_file, capsys):
    assert main(["landscape", "--adder", native_circuit_file, "--grid", "21"]) == EXIT_OK
    assert "average=" in capsys.readouterr().out


def test_landscape_missing_file(capsys):
    assert main(["landscape", "--adder", "/nonexistent/file.txt"]) == EXIT_IO


def test_landscape_malformed_circuit(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("CNOT 1 2\nWAT 9\n")
    assert main(["landscape", "--adder", str(bad)]) == EXIT_PARSE
    assert "2" in capsys.readouterr().err


def test_landscape_domain_error(capsys):
    assert main(["landscape", "--adder", "basis", "--grid", "1"]) == EXIT_DOMAIN


# --- ga ------------------------------------------------------------------------


def write_config(tmp_path, native_circuit_file=None, seed=7, extra=""):
    cfg = tmp_path / "run.cfg"
    seed_line = (
        f"initial_population = {native_circuit_file}\n" if native_circuit_file else ""
    )
    cfg.write_text(
        f"p = 30\ngenerations = 15\nseed = {seed}\ngrid_n = 11\n"
        f"out_log = {tmp_path}/run.log\nout_circuit = {tmp_path}/best.txt\n"
        f"out_landscape = {tmp_path}/best.csv\n" + seed_line + extra
    )
    return cfg


def test_ga_run_writes_artifacts(tmp_path, capsys):
    cfg = write_config(tmp_path)
    assert main(["ga", str(cfg)]) == EXIT_OK
    log = (tmp_path / "run.log").read_text().splitlines()
    assert log[0] == "generation\tbest\tmean"
    assert len(log) == 17  # header + generations 0..15
    assert (tmp_path / "best.txt").exists()
    assert (tmp_path / "best.csv").exists()


def test_ga_deterministic_byte_identical(tmp_path):
    cfg = write_config(tmp_path)
    assert main(["ga", str(cfg)]) == EXIT_OK
    first = {name: (tmp_path / name).read_bytes() for name in ("run.log", "best.txt", "best.csv")}
    assert main(["ga", str(cfg)]) == EXIT_OK
    second = {name: (tmp_path / name).read_bytes() for name in ("run.log", "best.txt", "best.csv")}
    assert first == second


def test_ga_seeded_generation_zero(tmp_path, native_circuit_file, capsys):
    cfg = write_config(tmp_path, native_circuit_file)
    assert main(["ga", str(cfg)]) == EXIT_OK
    log = (tmp_path / "run.log").read_text().splitlines()
    gen0_best = float(log[1].split("\t")[1])
    assert gen0_best >= 0.944


def test_ga_bad_config_names_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("p = 30\nwhatever = 1\n")
    assert main(["ga", str(cfg)]) == EXIT_USAGE
    assert "whatever" in capsys.readouterr().err


# --- points ---------------------------------------------------------------------


def test_points_default_table(native_circuit_file, capsys):
    assert main(["points", native_circuit_file]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 6
    assert lines[0].startswith("{0,0}")
    for line in lines:
        value = line.split()[-1]
        assert len(value.split(".")[1]) == 3  # three decimals
        assert 0.0 <= float(value) <= 1.0


def test_points_custom_thetas(native_circuit_file, capsys):
    assert main(["points", native_circuit_file, "--thetas", "pi/8,3pi/8"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("{pi/8,3pi/8}")


def test_points_out_of_region(native_circuit_file, capsys):
    assert main(["points", native_circuit_file, "--thetas", "2.0,0"]) == EXIT_DOMAIN


def test_points_plus_reference_circuit(tmp_path, capsys):
    # H on the ancilla, written as native rotations: the trivial |+> adder
    plus = tmp_path / "plus.txt"
    plus.write_text("ROT Y 3 1.5707963267948966\nROT X 3 3.141592653589793\n")
    assert main(["points", str(plus), "--thetas", "0,pi/2;0,0"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].endswith("1.000")
    assert lines[1].endswith("0.500")


# --- verify -----------------------------------------------------------------------


def test_verify_basis(capsys):
    assert main(["verify", "basis"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("[pass]") == 6


def test_verify_qudit_4_prints_tuples(capsys):
    assert main(["verify", "qudit", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "{B01, B32}" in out
    assert "isometry (Gram matrix is identity): pass" in out


def test_verify_qudit_rejects_d2(capsys):
    assert main(["verify", "qudit", "2"]) == EXIT_DOMAIN
    assert "d >= 3" in capsys.readouterr().err


# --- export ------------------------------------------------------------------------


def test_export_roundtrip(tmp_path, native_circuit_file, capsys):
    out = tmp_path / "circuit.qasm"
    assert main(["export", native_circuit_file, "--out", str(out)]) == EXIT_OK
    compiled = compile_native(basis_adder_circuit())
    back = import_qasm(out.read_text())
    assert np.max(np.abs(circuit_unitary(back) - circuit_unitary(compiled))) < 1e-10
    gate_lines = [
        ln for ln in out.read_text().splitlines() if ln.startswith(("rx", "ry", "rz", "cx"))
    ]
    assert len(gate_lines) == len(compiled)


def test_export_rejects_non_native(tmp_path, raw_circuit_file, capsys):
    out = tmp_path / "x.qasm"
    assert main(["export", raw_circuit_file, "--out", str(out)]) == EXIT_DOMAIN
    assert "compile" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["landscape"])  # --adder is required
    assert err.value.code == EXIT_USAGE
