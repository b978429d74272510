"""File formats: circuit text, OpenQASM 2.0 export, landscape CSV, run config.

Circuit files carry one gate per line:

    ROT <axis> <qubit> <angle-rad>
    CNOT <control>[!] <target>
    CHAD <control>[!] <target>
    TOFF <c1>[!] <c2>[!] <target>

A trailing ``!`` marks a negated control. ``#`` starts a comment. Angles
are written with enough digits to round-trip exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ConfigError, DomainError, ParseError
from .fidelity import DEFAULT_GRID, FidelityLandscape
from .ga import GAConfig, genome_from_circuit
from .sim import (
    Circuit,
    GateInstruction,
    GateKind,
    ROTATION_KINDS,
    cnot,
    controlled_h,
    rot_x,
    rot_y,
    rot_z,
    toffoli,
)

_AXIS_TO_KIND = {"X": GateKind.ROT_X, "Y": GateKind.ROT_Y, "Z": GateKind.ROT_Z}
_KIND_TO_AXIS = {v: k for k, v in _AXIS_TO_KIND.items()}

NATIVE_KINDS = frozenset(ROTATION_KINDS) | {GateKind.CNOT}


def _fmt_angle(angle: float) -> str:
    return f"{angle:.17g}"


def format_circuit(c: Circuit) -> str:
    lines = []
    for g in c:
        if g.kind in ROTATION_KINDS:
            lines.append(f"ROT {_KIND_TO_AXIS[g.kind]} {g.qubits[0]} {_fmt_angle(g.angle)}")
        elif g.kind is GateKind.CNOT:
            c1 = f"{g.qubits[0]}{'!' if g.negated[0] else ''}"
            lines.append(f"CNOT {c1} {g.qubits[1]}")
        elif g.kind is GateKind.CONTROLLED_H:
            c1 = f"{g.qubits[0]}{'!' if g.negated[0] else ''}"
            lines.append(f"CHAD {c1} {g.qubits[1]}")
        elif g.kind is GateKind.TOFFOLI:
            c1 = f"{g.qubits[0]}{'!' if g.negated[0] else ''}"
            c2 = f"{g.qubits[1]}{'!' if g.negated[1] else ''}"
            lines.append(f"TOFF {c1} {c2} {g.qubits[2]}")
        else:
            raise ValueError(f"gate kind {g.kind.name} has no file representation; compile first")
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_control(token: str, path: str | None, line_no: int) -> tuple[int, bool]:
    negated = token.endswith("!")
    if negated:
        token = token[:-1]
    try:
        return int(token), negated
    except ValueError:
        raise ParseError(f"bad qubit token {token!r}", path, line_no) from None


def _parse_qubit(token: str, path: str | None, line_no: int) -> int:
    q, negated = _parse_control(token, path, line_no)
    if negated:
        raise ParseError("target qubit cannot be negated", path, line_no)
    return q


def parse_circuit(text: str, path: str | None = None) -> Circuit:
    gates: list[GateInstruction] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        mnemonic, args = fields[0].upper(), fields[1:]
        try:
            if mnemonic == "ROT":
                if len(args) != 3:
                    raise ParseError("ROT takes axis, qubit, angle", path, line_no)
                axis = args[0].upper()
                if axis not in _AXIS_TO_KIND:
                    raise ParseError(f"unknown rotation axis {args[0]!r}", path, line_no)
                try:
                    qubit, angle = int(args[1]), float(args[2])
                except ValueError:
                    raise ParseError("bad qubit or angle", path, line_no) from None
                gates.append(GateInstruction(_AXIS_TO_KIND[axis], (qubit,), angle))
            elif mnemonic in ("CNOT", "CHAD"):
                if len(args) != 2:
                    raise ParseError(f"{mnemonic} takes control and target", path, line_no)
                ctrl, negated = _parse_control(args[0], path, line_no)
                target = _parse_qubit(args[1], path, line_no)
                make = cnot if mnemonic == "CNOT" else controlled_h
                gates.append(make(ctrl, target, negated=negated))
            elif mnemonic == "TOFF":
                if len(args) != 3:
                    raise ParseError("TOFF takes two controls and a target", path, line_no)
                c1, n1 = _parse_control(args[0], path, line_no)
                c2, n2 = _parse_control(args[1], path, line_no)
                target = _parse_qubit(args[2], path, line_no)
                gates.append(toffoli(c1, c2, target, negated=(n1, n2)))
            else:
                raise ParseError(f"unknown gate mnemonic {mnemonic!r}", path, line_no)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), path, line_no) from None
    return Circuit(gates)


def write_circuit(c: Circuit, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_circuit(c))


def read_circuit(path: str) -> Circuit:
    with open(path) as fh:
        text = fh.read()
    return parse_circuit(text, path=path)


# --- OpenQASM 2.0 -----------------------------------------------------------

_QASM_KIND = {GateKind.ROT_X: "rx", GateKind.ROT_Y: "ry", GateKind.ROT_Z: "rz"}


def export_qasm(c: Circuit) -> str:
    """OpenQASM 2.0 text for a native circuit, measuring the ancilla.

    Qubit i maps to register slot q[i-1].
    """
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', "qreg q[3];", "creg c[1];"]
    for g in c:
        if g.kind in ROTATION_KINDS:
            lines.append(f"{_QASM_KIND[g.kind]}({_fmt_angle(g.angle)}) q[{g.qubits[0] - 1}];")
        elif g.kind is GateKind.CNOT and not any(g.negated):
            lines.append(f"cx q[{g.qubits[0] - 1}],q[{g.qubits[1] - 1}];")
        else:
            raise ValueError(
                f"gate kind {g.kind.name} is not native; compile the circuit first"
            )
    lines.append("measure q[2] -> c[0];")
    return "\n".join(lines) + "\n"


_QASM_GATE_RE = re.compile(
    r"^(rx|ry|rz)\(([^)]+)\)\s+q\[(\d)\]$|^(cx)\s+q\[(\d)\]\s*,\s*q\[(\d)\]$"
)
_QASM_SKIP = ("OPENQASM", "include", "qreg", "creg", "measure", "barrier")
_ROT_BY_NAME = {"rx": rot_x, "ry": rot_y, "rz": rot_z}


def import_qasm(text: str, path: str | None = None) -> Circuit:
    """Parse the QASM subset produced by export_qasm."""
    gates: list[GateInstruction] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip().rstrip(";").strip()
        if not line or line.split("(")[0].split()[0] in _QASM_SKIP:
            continue
        m = _QASM_GATE_RE.match(line)
        if not m:
            raise ParseError(f"unsupported QASM statement {line!r}", path, line_no)
        if m.group(1):
            name, angle_text, q = m.group(1), m.group(2), int(m.group(3))
            try:
                angle = float(angle_text)
            except ValueError:
                raise ParseError(f"bad angle {angle_text!r}", path, line_no) from None
            gates.append(_ROT_BY_NAME[name](q + 1, angle))
        else:
            gates.append(cnot(int(m.group(5)) + 1, int(m.group(6)) + 1))
    return Circuit(gates)


# --- landscape CSV ----------------------------------------------------------


def format_landscape_csv(ls: FidelityLandscape) -> str:
    rows = ["theta1,theta2,fidelity"]
    for i in range(ls.grid_n):
        for j in range(ls.grid_n):
            rows.append(
                f"{ls.thetas[i]:.16e},{ls.thetas[j]:.16e},{ls.samples[i, j]:.16e}"
            )
    rows.append(
        f"# average={ls.average:.16e}, minimum={ls.minimum:.16e},"
        f" argmin=({ls.argmin[0]:.16e},{ls.argmin[1]:.16e})"
    )
    return "\n".join(rows) + "\n"


def write_landscape_csv(ls: FidelityLandscape, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_landscape_csv(ls))


# --- run config -------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    ga: GAConfig
    out_log: str
    out_circuit: str
    out_landscape: str
    final_grid_n: int
    initial_population_path: str | None


_REQUIRED_KEYS = ("p", "generations", "seed", "out_log", "out_circuit", "out_landscape")
_OPTIONAL_KEYS = (
    "mutation_threshold",
    "fitness_mode",
    "grid_n",
    "final_grid_n",
    "initial_population",
)


def _config_int(raw: dict[str, str], key: str) -> int:
    try:
        return int(raw[key])
    except ValueError:
        raise ConfigError(f"expected an integer, got {raw[key]!r}", key) from None


def parse_run_config(text: str) -> RunConfig:
    """Parse ``key = value`` lines; unknown keys are rejected."""
    raw: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no} is not of the form key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _REQUIRED_KEYS and key not in _OPTIONAL_KEYS:
            raise ConfigError("unknown key", key)
        if key in raw:
            raise ConfigError("duplicate key", key)
        if not value:
            raise ConfigError("empty value", key)
        raw[key] = value
    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise ConfigError("required key missing", key)

    threshold = 0.7
    if "mutation_threshold" in raw:
        try:
            threshold = float(raw["mutation_threshold"])
        except ValueError:
            raise ConfigError("expected a float", "mutation_threshold") from None
    mode = raw.get("fitness_mode", "average")
    grid_n = _config_int(raw, "grid_n") if "grid_n" in raw else DEFAULT_GRID
    final_grid_n = _config_int(raw, "final_grid_n") if "final_grid_n" in raw else DEFAULT_GRID

    initial_path = raw.get("initial_population")
    initial = None
    if initial_path is not None:
        try:
            initial = (genome_from_circuit(read_circuit(initial_path)),)
        except DomainError as exc:
            raise ConfigError(str(exc), "initial_population") from None

    try:
        ga_cfg = GAConfig(
            p=_config_int(raw, "p"),
            generations=_config_int(raw, "generations"),
            mutation_threshold=threshold,
            fitness_mode=mode,
            grid_n=grid_n,
            seed=_config_int(raw, "seed"),
            initial_population=initial,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if final_grid_n < 2:
        raise ConfigError("must be at least 2", "final_grid_n")
    return RunConfig(
        ga=ga_cfg,
        out_log=raw["out_log"],
        out_circuit=raw["out_circuit"],
        out_landscape=raw["out_landscape"],
        final_grid_n=final_grid_n,
        initial_population_path=initial_path,
    )


def read_run_config(path: str) -> RunConfig:
    with open(path) as fh:
        return parse_run_config(fh.read())


# --- shipped reference data ---------------------------------------------------


def gate_limited_reference() -> list[dict[str, str]]:
    """Published fidelities of a two-CNOT gate-limited adder at six points.

    The 'experimental' column is hardware data and the circuit behind the
    'classical_ideal' column is not available, so neither is reproduced
    by this package; the rows are shipped for comparison only.
    """
    from importlib import resources

    text = resources.files("qadder").joinpath("data/gate_limited_adder_reference.csv").read_text()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, ln.split(","))) for ln in lines[1:]]
