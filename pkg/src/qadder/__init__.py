"""Approximate quantum adders for two restricted qubit summands.

Exact quantum adders are impossible, so this package builds and studies
approximate ones: the adder that is exact on computational-basis inputs,
fidelity landscapes over the restricted input region, hardware-error
estimates, qudit residual-state groupings, and a genetic-algorithm
search over quantized gate sequences.
"""

from .basis import (
    basis_adder_circuit,
    basis_adder_matrix,
    compile_native,
    verify_basis_action,
)
from .fidelity import (
    FidelityLandscape,
    GateCounts,
    adder_fidelity,
    commutativity_deviation,
    constant_plus_fidelity,
    constant_plus_unitary,
    count_gates,
    experimental_fidelity,
    ideal_sum,
    input_state,
    landscape,
)
from .ga import (
    GAConfig,
    GARunRecord,
    GeneRow,
    decode,
    evolve,
    fitness,
    genome_from_circuit,
    mutate,
    random_genome,
    recombine,
    to_circuit,
)
from .qudit import TupleGrouping, isometry_check, polygon_tuples, verify_grouping
from .sim import (
    Circuit,
    GateInstruction,
    GateKind,
    apply_circuit,
    circuit_unitary,
    cnot,
    controlled_h,
    decompose_toffoli,
    drop_trailing_nonancilla,
    gate_matrix,
    hadamard,
    phase_s,
    reduced_ancilla,
    rot_x,
    rot_y,
    rot_z,
    t_dagger,
    t_gate,
    toffoli,
    trace_distance,
    x,
)

__version__ = "0.1.0"
