"""Input region, ideal sum state, and fidelity diagnostics for the adder.

Summands are restricted to real first-quadrant states (cos t, sin t) with
t in [0, pi/2], which fixes all phases and makes the ideal normalized sum
well defined everywhere on the region. Fidelity is evaluated on the
reduced ancilla state after the candidate unitary acts on
|psi1> (x) |psi2> (x) |0>.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .sim import (
    ATOL,
    Circuit,
    GateKind,
    SINGLE_QUBIT_KINDS,
    gate_matrix,
    hadamard,
    is_unitary,
    reduced_ancilla,
    trace_distance,
)

THETA_MAX = np.pi / 2
DEFAULT_GRID = 51

# tiny slack so pi/2 computed elsewhere in floating point stays in range
_EDGE = 1e-12


def _check_theta(theta: float, name: str = "theta") -> float:
    theta = float(theta)
    if not (-_EDGE <= theta <= THETA_MAX + _EDGE):
        raise DomainError(f"{name} = {theta!r} outside [0, pi/2]")
    return min(max(theta, 0.0), THETA_MAX)


def input_state(theta: float) -> np.ndarray:
    """Single-qubit summand (cos theta, sin theta)."""
    theta = _check_theta(theta)
    return np.array([np.cos(theta), np.sin(theta)], dtype=complex)


def ideal_sum(theta1: float, theta2: float) -> np.ndarray:
    """Normalized single-qubit sum of the two summands.

    The squared norm 2 + 2*cos(theta1 - theta2) is at least 2 on the
    region, so normalization never degenerates.
    """
    theta1 = _check_theta(theta1, "theta1")
    theta2 = _check_theta(theta2, "theta2")
    v = np.array(
        [np.cos(theta1) + np.cos(theta2), np.sin(theta1) + np.sin(theta2)], dtype=complex
    )
    return v / np.linalg.norm(v)


def _check_unitary(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u):
        raise ValueError("adder matrix is not unitary within 1e-10")
    return u


def _clamp_fidelity(value: complex) -> float:
    if abs(value.imag) >= ATOL:
        raise ValueError(f"fidelity has non-negligible imaginary part {value.imag!r}")
    return float(min(max(value.real, 0.0), 1.0))


def adder_fidelity(u: np.ndarray, theta1: float, theta2: float) -> float:
    """Overlap of the reduced ancilla output with the ideal sum state."""
    u = _check_unitary(u)
    psi_in = np.kron(np.kron(input_state(theta1), input_state(theta2)), [1.0, 0.0])
    rho = reduced_ancilla(u @ psi_in)
    ideal = ideal_sum(theta1, theta2)
    return _clamp_fidelity(np.vdot(ideal, rho @ ideal))


def constant_plus_fidelity(theta1: float, theta2: float) -> float:
    """Closed-form fidelity of the input-independent |+> output."""
    theta1 = _check_theta(theta1, "theta1")
    theta2 = _check_theta(theta2, "theta2")
    num = (np.cos(theta1) + np.cos(theta2) + np.sin(theta1) + np.sin(theta2)) ** 2
    norm2 = 2.0 + 2.0 * np.cos(theta1 - theta2)
    return float(num / (2.0 * norm2))


def constant_plus_unitary() -> np.ndarray:
    """Unitary that puts the ancilla in |+> regardless of the summands."""
    return gate_matrix(hadamard(3)).copy()


@dataclass(frozen=True)
class FidelityLandscape:
    """Fidelity samples over the uniform inclusive grid on [0, pi/2]^2.

    samples[i, j] is the fidelity at (thetas[i], thetas[j]); average is the
    arithmetic mean over all samples and argmin locates the minimum.
    """

    grid_n: int
    thetas: np.ndarray
    samples: np.ndarray
    average: float
    minimum: float
    argmin: tuple[float, float]


@functools.lru_cache(maxsize=32)
def _grid_cache(grid_n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Precomputed grid angles, input statevectors, and ideal sum states."""
    thetas = np.linspace(0.0, THETA_MAX, grid_n)
    c, s = np.cos(thetas), np.sin(thetas)
    single = np.stack([c, s], axis=-1)  # (n, 2)
    pair = np.einsum("ia,jb->ijab", single, single).reshape(grid_n, grid_n, 4)
    psi = np.zeros((grid_n, grid_n, 8), dtype=complex)
    psi[..., 0::2] = pair  # ancilla starts in |0>
    ideal = np.empty((grid_n, grid_n, 2))
    ideal[..., 0] = c[:, None] + c[None, :]
    ideal[..., 1] = s[:, None] + s[None, :]
    ideal /= np.linalg.norm(ideal, axis=-1, keepdims=True)
    for arr in (thetas, psi, ideal):
        arr.flags.writeable = False
    return thetas, psi, ideal.astype(complex)


def _fidelity_grid(u: np.ndarray, grid_n: int) -> tuple[np.ndarray, np.ndarray]:
    """All grid fidelities in one batched evaluation (fixed ordering)."""
    thetas, psi, ideal = _grid_cache(grid_n)
    out = np.einsum("xy,ijy->ijx", u, psi).reshape(grid_n, grid_n, 4, 2)
    amps = np.einsum("ijka,ija->ijk", out, ideal.conj())
    samples = np.sum(np.abs(amps) ** 2, axis=-1)
    return thetas, np.clip(samples, 0.0, 1.0)


def landscape(u: np.ndarray, grid_n: int = DEFAULT_GRID) -> FidelityLandscape:
    """Evaluate adder_fidelity on the inclusive grid theta_k = (pi/2)k/(n-1)."""
    if grid_n < 2:
        raise DomainError(f"grid_n must be at least 2, got {grid_n}")
    u = _check_unitary(u)
    thetas, samples = _fidelity_grid(u, grid_n)
    flat = samples.reshape(-1)
    k = int(np.argmin(flat))
    i, j = divmod(k, grid_n)
    return FidelityLandscape(
        grid_n=grid_n,
        thetas=thetas,
        samples=samples,
        average=float(np.mean(flat)),
        minimum=float(flat[k]),
        argmin=(float(thetas[i]), float(thetas[j])),
    )


class GateCounts(NamedTuple):
    n_single: int
    n_cnot: int


def count_gates(c: Circuit) -> GateCounts:
    """Count CNOTs and single-qubit gates, a Hadamard counting as two rotations."""
    n_single = 0
    n_cnot = 0
    for g in c:
        if g.kind is GateKind.CNOT and not any(g.negated):
            n_cnot += 1
        elif g.kind is GateKind.HADAMARD:
            n_single += 2
        elif g.kind in SINGLE_QUBIT_KINDS:
            n_single += 1
        else:
            raise DomainError(
                f"{g.kind.name} is not a plain single-qubit gate or CNOT; compile first"
            )
    return GateCounts(n_single=n_single, n_cnot=n_cnot)


def experimental_fidelity(f_avg: float, counts: GateCounts) -> float:
    """Hardware estimate: per-gate error factors 0.1% single-qubit, 1% CNOT,
    with each CNOT also costing two single-qubit gates."""
    n_single, n_cnot = int(counts[0]), int(counts[1])
    if n_single < 0 or n_cnot < 0:
        raise ValueError("gate counts must be non-negative")
    return float(f_avg) * 0.999 ** (n_single + 2 * n_cnot) * 0.99**n_cnot


def commutativity_deviation(u: np.ndarray, grid_n: int = DEFAULT_GRID) -> float:
    """Max trace distance between ancilla outputs with summands swapped.

    Zero on the grid means the adder is commutative there; any positive
    value flags an order-dependent adder.
    """
    if grid_n < 2:
        raise DomainError(f"grid_n must be at least 2, got {grid_n}")
    u = _check_unitary(u)
    thetas, psi, _ = _grid_cache(grid_n)
    out = np.einsum("xy,ijy->ijx", u, psi).reshape(grid_n, grid_n, 4, 2)
    # rho[i,j] = sum_k |block_k><block_k| over the summand index k
    rho = np.einsum("ijka,ijkb->ijab", out, out.conj())
    worst = 0.0
    for i in range(grid_n):
        for j in range(i + 1, grid_n):
            worst = max(worst, trace_distance(rho[i, j], rho[j, i]))
    return worst
