"""The exact-on-basis-states adder: direct matrix, gate decomposition,
and compilation to single-qubit rotations plus CNOTs.

The adder maps |000>->|000>, |010>->|01+>, |100>->|10+>, |110>->|001>,
|001>->|110>, |011>->|01->, |101>->|10->, |111>->|111>, so all four
computational-basis summand pairs produce the exact normalized sum on the
ancilla.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sim import (
    ATOL,
    Circuit,
    DIM,
    GateKind,
    GateInstruction,
    ROTATION_KINDS,
    apply_circuit,
    cnot,
    controlled_h,
    decompose_toffoli,
    drop_trailing_nonancilla,
    gate_matrix,
    reduced_ancilla,
    rot_x,
    rot_y,
    rot_z,
    toffoli,
    trace_distance,
    x,
)

_SQ2 = 1.0 / np.sqrt(2.0)

# input basis index -> list of (output basis index, amplitude)
_BASIS_MAP = {
    0b000: [(0b000, 1.0)],
    0b010: [(0b010, _SQ2), (0b011, _SQ2)],
    0b100: [(0b100, _SQ2), (0b101, _SQ2)],
    0b110: [(0b001, 1.0)],
    0b001: [(0b110, 1.0)],
    0b011: [(0b010, _SQ2), (0b011, -_SQ2)],
    0b101: [(0b100, _SQ2), (0b101, -_SQ2)],
    0b111: [(0b111, 1.0)],
}


def basis_adder_matrix() -> np.ndarray:
    """8x8 matrix whose columns are the defining basis-state images."""
    u = np.zeros((DIM, DIM), dtype=complex)
    for col, images in _BASIS_MAP.items():
        for row, amp in images:
            u[row, col] = amp
    return u


def basis_adder_circuit() -> Circuit:
    """Gate realization of the adder, in time order.

    The trailing five gates form the permutation that swaps |001> and
    |110> while fixing the other six basis states.
    """
    return Circuit(
        (
            cnot(1, 2),
            controlled_h(2, 3),
            cnot(1, 2),
            cnot(1, 2, negated=True),
            cnot(1, 3, negated=True),
            toffoli(2, 3, 1, negated=(False, True)),
            cnot(1, 3, negated=True),
            cnot(1, 2, negated=True),
        )
    )


def _expand(g: GateInstruction) -> list[GateInstruction]:
    """Rewrite one gate over {rotations, X, H, S, T, Tdg, CNOT}."""
    k = g.kind
    if k in ROTATION_KINDS or k is GateKind.X or k is GateKind.HADAMARD:
        return [g]
    if k in (GateKind.PHASE_S, GateKind.T, GateKind.T_DAGGER):
        return [g]
    if k is GateKind.CNOT:
        c, t = g.qubits
        if g.negated[0]:
            # exact identity: a control firing on |0> equals an extra X on
            # the target, since X itself is the controlled operation
            return [x(t), cnot(c, t)]
        return [g]
    if k is GateKind.CONTROLLED_H:
        c, t = g.qubits
        core = [rot_y(t, np.pi / 4), cnot(c, t), rot_y(t, -np.pi / 4)]
        if g.negated[0]:
            return [x(c), *core, x(c)]
        return core
    if k is GateKind.TOFFOLI:
        return list(decompose_toffoli(g).gates)
    raise ValueError(f"cannot compile gate kind {k.name}")


def _is_phase_identity(p: np.ndarray) -> bool:
    lam = p[0, 0]
    return abs(abs(lam) - 1.0) < ATOL and bool(np.max(np.abs(p - lam * np.eye(DIM))) < ATOL)


def _commutes(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.max(np.abs(a @ b - b @ a)) < ATOL)


def _cancel_inverse_pairs(gates: list[GateInstruction]) -> list[GateInstruction]:
    """Drop gate pairs whose product is the identity up to a global phase,
    walking forward through gates that commute with the first of the pair."""
    gates = list(gates)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(gates):
            a = gate_matrix(gates[i])
            cancelled = False
            for j in range(i + 1, len(gates)):
                if gates[i].support.isdisjoint(gates[j].support):
                    continue
                b = gate_matrix(gates[j])
                if _is_phase_identity(b @ a):
                    del gates[j]
                    del gates[i]
                    changed = True
                    cancelled = True
                    break
                if not _commutes(a, b):
                    break
            if not cancelled:
                i += 1
    return gates


_NATIVE_REWRITE = {
    GateKind.X: lambda q: [rot_x(q, np.pi)],
    GateKind.HADAMARD: lambda q: [rot_y(q, np.pi / 2), rot_x(q, np.pi)],
    GateKind.PHASE_S: lambda q: [rot_z(q, np.pi / 2)],
    GateKind.T: lambda q: [rot_z(q, np.pi / 4)],
    GateKind.T_DAGGER: lambda q: [rot_z(q, -np.pi / 4)],
}


def compile_native(c: Circuit, drop_trailing: bool = True) -> Circuit:
    """Compile to {ROT_X, ROT_Y, ROT_Z, CNOT} only.

    With drop_trailing=False the result equals the input unitary up to a
    global phase. The default additionally removes trailing gates that
    never touch the ancilla, which changes the unitary but cannot change
    the reduced ancilla output.
    """
    expanded: list[GateInstruction] = []
    for g in c:
        expanded.extend(_expand(g))
    expanded = _cancel_inverse_pairs(expanded)
    if drop_trailing:
        expanded = list(drop_trailing_nonancilla(Circuit(expanded)).gates)
    native: list[GateInstruction] = []
    for g in expanded:
        rewrite = _NATIVE_REWRITE.get(g.kind)
        native.extend(rewrite(g.qubits[0]) if rewrite else [g])
    return Circuit(native)


@dataclass(frozen=True)
class BasisRowCheck:
    summands: tuple[int, int]
    expected: str
    distance: float
    passed: bool


@dataclass(frozen=True)
class BasisActionReport:
    rows: tuple[BasisRowCheck, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


_ROW_TARGETS = {
    (0, 0): ("|0>", np.array([1.0, 0.0], dtype=complex)),
    (0, 1): ("|+>", np.array([_SQ2, _SQ2], dtype=complex)),
    (1, 0): ("|+>", np.array([_SQ2, _SQ2], dtype=complex)),
    (1, 1): ("|1>", np.array([0.0, 1.0], dtype=complex)),
}


def verify_basis_action(circuit: Circuit | None = None) -> BasisActionReport:
    """Check the four computational-basis additions on the gate circuit.

    For each summand pair the ancilla marginal must equal the stated pure
    state (|0>, |+>, |+>, |1>) within 1e-10 trace distance.
    """
    circuit = basis_adder_circuit() if circuit is None else circuit
    rows = []
    for (q1, q2), (label, target) in _ROW_TARGETS.items():
        psi_in = np.zeros(DIM, dtype=complex)
        psi_in[4 * q1 + 2 * q2] = 1.0
        rho = reduced_ancilla(apply_circuit(circuit, psi_in))
        dist = trace_distance(rho, np.outer(target, target.conj()))
        rows.append(
            BasisRowCheck(summands=(q1, q2), expected=label, distance=dist, passed=dist < ATOL)
        )
    return BasisActionReport(rows=tuple(rows))
