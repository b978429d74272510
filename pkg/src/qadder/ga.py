"""Genetic search over fixed-length gate sequences for the adder.

An individual is a genome of p rows, each row decoding to one gate from
the 61-element set: the three axis rotations on any of the three qubits
with an angle from {pi, pi/2, pi/4, -pi/4, -pi/2, -pi} (54 gates), the
six CNOTs, and the identity (encoded as a CNOT whose control equals its
target). A cycle sorts four parents by fitness, breeds nine newborns by
hierarchical recombination, mutates at most one row per newborn, and
keeps the best four of the thirteen.

All randomness flows through one seeded generator in a fixed order
(population init, then per generation the nine recombination position
draws followed by the nine mutation draws), so runs are reproducible
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .fidelity import landscape
from .sim import Circuit, GateInstruction, GateKind, circuit_unitary

ANGLES = (np.pi, np.pi / 2, np.pi / 4, -np.pi / 4, -np.pi / 2, -np.pi)

_ROTATION_OPCODES = (GateKind.ROT_X, GateKind.ROT_Y, GateKind.ROT_Z)


class GeneRow(NamedTuple):
    """One genome row. For rotations b indexes ANGLES; for CNOT b is the
    target qubit, and a == b means the identity."""

    opcode: GateKind
    a: int
    b: int


GATE_TABLE: tuple[GeneRow, ...] = tuple(
    [
        GeneRow(axis, q, k)
        for axis in _ROTATION_OPCODES
        for q in (1, 2, 3)
        for k in range(len(ANGLES))
    ]
    + [GeneRow(GateKind.CNOT, a, b) for a in (1, 2, 3) for b in (1, 2, 3) if a != b]
    + [GeneRow(GateKind.CNOT, 1, 1)]
)
assert len(GATE_TABLE) == 61

IDENTITY_ROW = GeneRow(GateKind.CNOT, 1, 1)

Genome = tuple[GeneRow, ...]


def decode(row: GeneRow) -> GateInstruction | None:
    """Decode a row to a gate instruction; identity rows decode to None."""
    if row.opcode in _ROTATION_OPCODES:
        if not 1 <= row.a <= 3 or not 0 <= row.b < len(ANGLES):
            raise ValueError(f"invalid rotation row {row}")
        return GateInstruction(row.opcode, (row.a,), ANGLES[row.b])
    if row.opcode is GateKind.CNOT:
        if not 1 <= row.a <= 3 or not 1 <= row.b <= 3:
            raise ValueError(f"invalid CNOT row {row}")
        if row.a == row.b:
            return None
        return GateInstruction(GateKind.CNOT, (row.a, row.b))
    raise ValueError(f"invalid opcode {row.opcode}")


def to_circuit(genome: Genome) -> Circuit:
    return Circuit(tuple(g for g in map(decode, genome) if g is not None))


def genome_from_circuit(c: Circuit) -> Genome:
    """Encode a native circuit as genome rows.

    Only CNOTs and axis rotations with angles from the quantized set are
    encodable; anything else must be compiled away first.
    """
    rows = []
    for g in c:
        if g.kind is GateKind.CNOT and not any(g.negated):
            rows.append(GeneRow(GateKind.CNOT, g.qubits[0], g.qubits[1]))
        elif g.kind in _ROTATION_OPCODES:
            matches = [k for k, a in enumerate(ANGLES) if abs(a - g.angle) < 1e-12]
            if not matches:
                raise DomainError(f"rotation angle {g.angle!r} is not in the quantized set")
            rows.append(GeneRow(g.kind, g.qubits[0], matches[0]))
        else:
            raise DomainError(f"gate kind {g.kind.name} cannot be encoded as a genome row")
    return tuple(rows)


def random_genome(p: int, rng: np.random.Generator) -> Genome:
    """p rows drawn uniformly over the 61 admissible gates."""
    if p < 3:
        raise DomainError(f"genome length must be at least 3, got {p}")
    return tuple(GATE_TABLE[k] for k in rng.integers(0, len(GATE_TABLE), size=p))


# (dominant parent, recessive parent, rows taken from the recessive one)
# for newborns 1..9; the dominant contributes the remaining p - k rows.
RECOMBINATION_PLAN: tuple[tuple[int, int, int], ...] = (
    (0, 1, 2),
    (0, 1, 2),
    (0, 1, 1),
    (0, 2, 2),
    (0, 2, 1),
    (0, 3, 1),
    (1, 2, 1),
    (1, 3, 1),
    (2, 3, 1),
)


def _distinct_positions(p: int, k: int, rng: np.random.Generator) -> list[int]:
    # partial Fisher-Yates on integer draws only, for a stable stream
    idx = list(range(p))
    for m in range(k):
        r = m + int(rng.integers(p - m))
        idx[m], idx[r] = idx[r], idx[m]
    return idx[:k]


def recombine(parents: list[Genome], rng: np.random.Generator) -> list[Genome]:
    """Breed the nine newborns from four parents sorted by fitness (best first).

    Each newborn copies the dominant parent and overwrites k uniformly
    chosen distinct positions with the recessive parent's rows at those
    same positions, so dominant rows keep their original order.
    """
    if len(parents) != 4:
        raise ValueError(f"recombination needs 4 parents, got {len(parents)}")
    p = len(parents[0])
    if p < 3 or any(len(g) != p for g in parents):
        raise ValueError("parents must share one length of at least 3")
    newborns = []
    for dom, rec, k in RECOMBINATION_PLAN:
        rows = list(parents[dom])
        for pos in _distinct_positions(p, k, rng):
            rows[pos] = parents[rec][pos]
        newborns.append(tuple(rows))
    return newborns


def mutate(genome: Genome, threshold: float, rng: np.random.Generator) -> Genome:
    """Replace one uniformly chosen row by a random gate when a uniform
    draw exceeds the threshold; at most one row changes per call."""
    if not 0.0 <= threshold <= 1.0:
        raise DomainError(f"mutation threshold must be in [0, 1], got {threshold}")
    if rng.random() <= threshold:
        return genome
    pos = int(rng.integers(len(genome)))
    row = GATE_TABLE[int(rng.integers(len(GATE_TABLE)))]
    return genome[:pos] + (row,) + genome[pos + 1 :]


@dataclass(frozen=True)
class GAConfig:
    p: int
    generations: int
    mutation_threshold: float = 0.7
    fitness_mode: str = "average"
    grid_n: int = 51
    seed: int = 0
    initial_population: tuple[Genome, ...] | None = None

    def __post_init__(self):
        if self.p < 3:
            raise DomainError(f"p must be at least 3, got {self.p}")
        if self.generations < 1:
            raise DomainError(f"generations must be at least 1, got {self.generations}")
        if not 0.0 <= self.mutation_threshold <= 1.0:
            raise DomainError(f"mutation_threshold outside [0, 1]: {self.mutation_threshold}")
        if self.fitness_mode not in ("average", "minimum"):
            raise DomainError(f"fitness_mode must be average or minimum: {self.fitness_mode}")
        if self.grid_n < 2:
            raise DomainError(f"grid_n must be at least 2, got {self.grid_n}")
        if self.initial_population is not None:
            if not 1 <= len(self.initial_population) <= 4:
                raise DomainError("initial_population must supply 1 to 4 genomes")
            for g in self.initial_population:
                if len(g) > self.p:
                    raise DomainError(f"seed genome has {len(g)} rows, limit is p = {self.p}")


def fitness(genome: Genome, cfg: GAConfig) -> float:
    """Landscape average or minimum of the decoded circuit on the config grid."""
    ls = landscape(circuit_unitary(to_circuit(genome)), cfg.grid_n)
    return ls.average if cfg.fitness_mode == "average" else ls.minimum


class GenerationStats(NamedTuple):
    generation: int
    best: float
    mean: float


@dataclass(frozen=True)
class GARunRecord:
    config: GAConfig
    history: tuple[GenerationStats, ...]
    final_population: tuple[Genome, ...]
    final_fitness: tuple[float, ...]
    best_genome: Genome
    best_fitness: float
    evaluations: int


def _pad(genome: Genome, p: int) -> Genome:
    return genome + (IDENTITY_ROW,) * (p - len(genome))


def evolve(cfg: GAConfig) -> GARunRecord:
    """Run the full search and record per-generation best and mean fitness.

    The four survivors of each cycle stay in the next selection pool, so
    the best-fitness series never decreases. Fitness is cached per genome;
    the cache cannot affect results because fitness is deterministic.
    """
    rng = np.random.default_rng(cfg.seed)
    cache: dict[Genome, float] = {}
    evaluations = 0

    def fit(genome: Genome) -> float:
        nonlocal evaluations
        if genome not in cache:
            cache[genome] = fitness(genome, cfg)
            evaluations += 1
        return cache[genome]

    population: list[Genome] = []
    if cfg.initial_population is not None:
        population.extend(_pad(g, cfg.p) for g in cfg.initial_population)
    while len(population) < 4:
        population.append(random_genome(cfg.p, rng))

    # stable sort: on ties the earlier-created individual wins
    population.sort(key=fit, reverse=True)
    history = [
        GenerationStats(0, fit(population[0]), float(np.mean([fit(g) for g in population])))
    ]

    for gen in range(1, cfg.generations + 1):
        newborns = recombine(population, rng)
        newborns = [mutate(g, cfg.mutation_threshold, rng) for g in newborns]
        pool = population + newborns
        pool.sort(key=fit, reverse=True)
        population = pool[:4]
        history.append(
            GenerationStats(gen, fit(population[0]), float(np.mean([fit(g) for g in population])))
        )

    return GARunRecord(
        config=cfg,
        history=tuple(history),
        final_population=tuple(population),
        final_fitness=tuple(fit(g) for g in population),
        best_genome=population[0],
        best_fitness=fit(population[0]),
        evaluations=evaluations,
    )
