"""Dense statevector simulation of the 3-qubit adder register.

Register convention: qubits are numbered 1..3 and a basis ket |q1 q2 q3>
has amplitude index b = 4*q1 + 2*q2 + q3, so ket strings read left to
right. Qubits 1 and 2 hold the summands, qubit 3 is the ancilla that
carries the approximate sum.

Rotations use R_alpha(theta) = exp(-i*theta*sigma_alpha/2). Controlled
gates list their controls first and the target last; any control may be
negated, meaning the gate fires when that control is |0>.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

N_QUBITS = 3
DIM = 8
ANCILLA = 3
ATOL = 1e-10

_SQ2 = 1.0 / math.sqrt(2.0)


class GateKind(Enum):
    ROT_X = "rx"
    ROT_Y = "ry"
    ROT_Z = "rz"
    X = "x"
    HADAMARD = "h"
    PHASE_S = "s"
    T = "t"
    T_DAGGER = "tdg"
    CNOT = "cnot"
    CONTROLLED_H = "ch"
    TOFFOLI = "toffoli"


ROTATION_KINDS = frozenset({GateKind.ROT_X, GateKind.ROT_Y, GateKind.ROT_Z})
SINGLE_QUBIT_KINDS = ROTATION_KINDS | {
    GateKind.X,
    GateKind.HADAMARD,
    GateKind.PHASE_S,
    GateKind.T,
    GateKind.T_DAGGER,
}

# number of control qubits per kind; remaining qubit is the target
_N_CONTROLS = {
    GateKind.CNOT: 1,
    GateKind.CONTROLLED_H: 1,
    GateKind.TOFFOLI: 2,
}


@dataclass(frozen=True)
class GateInstruction:
    """One primitive gate: kind, qubit indices (controls first, target last),
    rotation angle where applicable, and per-control negation flags."""

    kind: GateKind
    qubits: tuple[int, ...]
    angle: float | None = None
    negated: tuple[bool, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "negated", tuple(bool(n) for n in self.negated))
        n_controls = _N_CONTROLS.get(self.kind, 0)
        if len(self.qubits) != n_controls + 1:
            raise ValueError(f"{self.kind.name} takes {n_controls + 1} qubits, got {self.qubits}")
        for q in self.qubits:
            if not 1 <= q <= N_QUBITS:
                raise ValueError(f"qubit index {q} outside 1..{N_QUBITS}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubit indices in {self.qubits}")
        if self.kind in ROTATION_KINDS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind.name} requires a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind.name} takes no angle")
        if not self.negated and n_controls:
            object.__setattr__(self, "negated", (False,) * n_controls)
        if len(self.negated) != n_controls:
            raise ValueError(f"{self.kind.name} takes {n_controls} negation flags")

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.qubits)


def rot_x(qubit: int, angle: float) -> GateInstruction:
    return GateInstruction(GateKind.ROT_X, (qubit,), angle)


def rot_y(qubit: int, angle: float) -> GateInstruction:
    return GateInstruction(GateKind.ROT_Y, (qubit,), angle)


def rot_z(qubit: int, angle: float) -> GateInstruction:
    return GateInstruction(GateKind.ROT_Z, (qubit,), angle)


def x(qubit: int) -> GateInstruction:
    return GateInstruction(GateKind.X, (qubit,))


def hadamard(qubit: int) -> GateInstruction:
    return GateInstruction(GateKind.HADAMARD, (qubit,))


def phase_s(qubit: int) -> GateInstruction:
    return GateInstruction(GateKind.PHASE_S, (qubit,))


def t_gate(qubit: int) -> GateInstruction:
    return GateInstruction(GateKind.T, (qubit,))


def t_dagger(qubit: int) -> GateInstruction:
    return GateInstruction(GateKind.T_DAGGER, (qubit,))


def cnot(control: int, target: int, negated: bool = False) -> GateInstruction:
    return GateInstruction(GateKind.CNOT, (control, target), negated=(negated,))


def controlled_h(control: int, target: int, negated: bool = False) -> GateInstruction:
    return GateInstruction(GateKind.CONTROLLED_H, (control, target), negated=(negated,))


def toffoli(
    control1: int,
    control2: int,
    target: int,
    negated: tuple[bool, bool] = (False, False),
) -> GateInstruction:
    return GateInstruction(GateKind.TOFFOLI, (control1, control2, target), negated=tuple(negated))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence, applied left to right in time."""

    gates: tuple[GateInstruction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[GateInstruction]:
        return iter(self.gates)

    def extended(self, gates: Iterable[GateInstruction]) -> "Circuit":
        return Circuit(self.gates + tuple(gates))


def _base_matrix(g: GateInstruction) -> np.ndarray:
    """2x2 operation applied to the target qubit when all controls fire."""
    k = g.kind
    if k is GateKind.ROT_X:
        c, s = math.cos(g.angle / 2.0), math.sin(g.angle / 2.0)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if k is GateKind.ROT_Y:
        c, s = math.cos(g.angle / 2.0), math.sin(g.angle / 2.0)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if k is GateKind.ROT_Z:
        return np.array(
            [[np.exp(-0.5j * g.angle), 0.0], [0.0, np.exp(0.5j * g.angle)]], dtype=complex
        )
    if k in (GateKind.X, GateKind.CNOT, GateKind.TOFFOLI):
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if k in (GateKind.HADAMARD, GateKind.CONTROLLED_H):
        return np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
    if k is GateKind.PHASE_S:
        return np.array([[1, 0], [0, 1j]], dtype=complex)
    if k is GateKind.T:
        return np.array([[1, 0], [0, np.exp(0.25j * np.pi)]], dtype=complex)
    if k is GateKind.T_DAGGER:
        return np.array([[1, 0], [0, np.exp(-0.25j * np.pi)]], dtype=complex)
    raise ValueError(f"no base matrix for {k}")


def _bit(index: int, qubit: int) -> int:
    return (index >> (N_QUBITS - qubit)) & 1


@functools.lru_cache(maxsize=8192)
def gate_matrix(g: GateInstruction) -> np.ndarray:
    """8x8 embedding of the gate.

    A negated control fires on |0>, which equals conjugating the
    normal-control gate by X on that control wire.
    """
    base = _base_matrix(g)
    controls, target = g.controls, g.target
    u = np.zeros((DIM, DIM), dtype=complex)
    for b in range(DIM):
        fires = all(
            _bit(b, c) == (0 if neg else 1) for c, neg in zip(controls, g.negated)
        )
        if not fires:
            u[b, b] = 1.0
            continue
        t_old = _bit(b, target)
        for t_new in (0, 1):
            idx = b if t_new == t_old else b ^ (1 << (N_QUBITS - target))
            u[idx, b] += base[t_new, t_old]
    u.flags.writeable = False
    return u


def is_unitary(u: np.ndarray, atol: float = ATOL) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.shape != (DIM, DIM):
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(DIM))) < atol)


def _check_state(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=complex).reshape(-1)
    if s.shape != (DIM,):
        raise ValueError(f"state must have {DIM} amplitudes, got shape {s.shape}")
    norm2 = float(np.vdot(s, s).real)
    if abs(norm2 - 1.0) > ATOL:
        raise ValueError(f"state not normalized: sum |amp|^2 = {norm2!r}")
    return s


def apply_circuit(c: Circuit, s: np.ndarray) -> np.ndarray:
    """Apply the circuit's gates to the state in time order."""
    out = _check_state(s)
    for g in c:
        out = gate_matrix(g) @ out
    return out


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Product of the gate matrices, later gates multiplying from the left."""
    u = np.eye(DIM, dtype=complex)
    for g in c:
        u = gate_matrix(g) @ u
    return u


def reduced_ancilla(s: np.ndarray) -> np.ndarray:
    """2x2 ancilla density matrix: trace out the two summand qubits."""
    s = _check_state(s)
    blocks = s.reshape(4, 2)  # rows indexed by (q1, q2), columns by the ancilla
    return blocks.T @ blocks.conj()


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of rho - sigma (both Hermitian)."""
    diff = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


# Doubly-controlled X over {H, T, Tdg, CNOT}: 15 gates, 6 of them CNOTs.
# Exact (no global phase); verified against gate_matrix in the test suite.
def _toffoli_network(c1: int, c2: int, t: int) -> list[GateInstruction]:
    return [
        hadamard(t),
        cnot(c1, t),
        t_gate(c1),
        t_dagger(t),
        cnot(c2, t),
        cnot(c2, c1),
        t_dagger(c1),
        t_gate(t),
        cnot(c2, c1),
        cnot(c1, t),
        t_dagger(t),
        cnot(c2, t),
        t_gate(t),
        t_gate(c2),
        hadamard(t),
    ]


def decompose_toffoli(g: GateInstruction) -> Circuit:
    """Expand a Toffoli (any control polarities) over {H, S, T, Tdg, CNOT, X}.

    Negated controls become X sandwiches on the corresponding control wire.
    """
    if g.kind is not GateKind.TOFFOLI:
        raise ValueError(f"expected a TOFFOLI instruction, got {g.kind.name}")
    c1, c2, t = g.qubits
    pre = [x(c) for c, neg in zip((c1, c2), g.negated) if neg]
    return Circuit(pre + _toffoli_network(c1, c2, t) + list(reversed(pre)))


def drop_trailing_nonancilla(c: Circuit) -> Circuit:
    """Remove the maximal suffix of gates that never touch the ancilla.

    Such a suffix acts only on the traced-out summand qubits, so the
    reduced ancilla state of the output is unchanged for every input.
    """
    gates = list(c.gates)
    while gates and ANCILLA not in gates[-1].support:
        gates.pop()
    return Circuit(gates)
