"""Matchgate (Gaussian) circuits: simulation, compilation and decomposition."""
from matchgates.circuits import (
    Circuit,
    MatchGate,
    Policy,
    gate_matrix,
    make_gate,
    modified_swap,
    named_gate,
    validate_circuit,
)
from matchgates.clifford_algebra import (
    GeneratorRep,
    decompose_pauli,
    jordan_wigner,
    monomial_expectation,
    verify_rep,
)
from matchgates.compiler import CZ, LogicalCircuit, OneQubit, compile_circuit, encode_input, verify_compilation
from matchgates.decompose import PlaneRotation, decompose, decompose_rotation, givens_factorize, plane_rotation_to_gates
from matchgates.errors import (
    DegreeTooHigh,
    DimensionError,
    DomainError,
    MatchgateError,
    NonGaussianGate,
    ResourceError,
    ToleranceError,
    ValidationError,
)
from matchgates.gaussian import (
    QuadraticHamiltonian,
    Rotation,
    circuit_to_rotation,
    expectation_pauli,
    expectation_z,
    gate_to_rotation,
    hamiltonian_to_rotation,
    input_moments,
)
from matchgates.intertwine import (
    CliffordCircuit,
    conjugate_pauli,
    conjugate_rep,
    conjugated_gate,
    example1_T,
    example2_T,
    example3_T,
    simulate_intertwined,
)
from matchgates.kernels import BACKEND
from matchgates.pauli import PauliString, ProductState, commutes, pauli_expectation, pauli_mul

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
