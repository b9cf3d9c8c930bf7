"""Compile CZ + one-qubit circuits into allowed G(A, B) gates at distance <= 2.

Each logical qubit ``j`` occupies the physical block ``4j .. 4j + 3`` with
``|0_L> = |0000>`` and ``|1_L> = |1001>``. A one-qubit gate ``A`` becomes
``G(Z,X)_{01} G(Z,X)_{23} G(A,A)_{12} G(Z,X)_{01} G(Z,X)_{23}`` on the block
(rightmost factor applied first). A CZ between blocks ``j`` and ``j + 1`` acts
on the crossover lines ``(4j + 3, 4j + 4)`` as
``G(H,H) G(X,X) SWAP G(H,H)``; the SWAP is never emitted but recorded in a
running line permutation, and later gates are re-addressed through it.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from matchgates import oracle
from matchgates.circuits import (
    H2,
    X2,
    Z2,
    Circuit,
    MatchGate,
    Policy,
    is_unitary,
    make_gate,
    validate_circuit,
)
from matchgates.errors import DomainError, ResourceError, ValidationError
from matchgates.pauli import PauliString, ProductState

BLOCK = 4
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)


@dataclass(frozen=True, eq=False)
class OneQubit:
    matrix: np.ndarray
    qubit: int


@dataclass(frozen=True)
class CZ:
    """Controlled-Z on logical qubits ``qubit`` and ``qubit + 1``."""

    qubit: int


LogicalOp = Union[OneQubit, CZ]


@dataclass(frozen=True)
class LogicalCircuit:
    m: int
    ops: tuple[LogicalOp, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.m < 1:
            raise DomainError("a logical circuit needs at least one qubit")
        for idx, op in enumerate(self.ops):
            if isinstance(op, OneQubit):
                mat = np.asarray(op.matrix, dtype=complex)
                if mat.shape != (2, 2) or not is_unitary(mat):
                    raise ValidationError(f"op {idx}: one-qubit matrix is not a 2x2 unitary")
                if not 0 <= op.qubit < self.m:
                    raise ValidationError(f"op {idx}: qubit {op.qubit} out of range")
            elif isinstance(op, CZ):
                if not 0 <= op.qubit < self.m - 1:
                    raise ValidationError(f"op {idx}: CZ needs adjacent qubits {op.qubit}, {op.qubit + 1}")
            else:
                raise ValidationError(f"op {idx}: unknown operation {op!r}")

    @property
    def counts(self) -> tuple[int, int]:
        g1 = sum(isinstance(op, OneQubit) for op in self.ops)
        return g1, len(self.ops) - g1

    def to_json(self) -> dict:
        ops = []
        for op in self.ops:
            if isinstance(op, OneQubit):
                mat = np.asarray(op.matrix, dtype=complex)
                ops.append({"kind": "U1", "q": op.qubit, "matrix": [[[v.real, v.imag] for v in row] for row in mat]})
            else:
                ops.append({"kind": "CZ", "q": op.qubit})
        return {"m": self.m, "ops": ops}

    @classmethod
    def from_json(cls, data: dict | str) -> LogicalCircuit:
        if isinstance(data, str):
            data = json.loads(data)
        ops: list[LogicalOp] = []
        for idx, op in enumerate(data["ops"]):
            kind = op.get("kind")
            if kind == "U1":
                mat = np.array([[complex(*e) if isinstance(e, list) else complex(e) for e in row] for row in op["matrix"]])
                ops.append(OneQubit(mat, int(op["q"])))
            elif kind == "CZ":
                ops.append(CZ(int(op["q"])))
            else:
                raise ValidationError(f"op {idx}: unknown kind {kind!r}")
        return cls(int(data["m"]), tuple(ops))


@dataclass(frozen=True)
class CompiledCircuit:
    """Physical circuit plus the line bookkeeping left by the absorbed SWAPs.

    ``permutation[l]`` is the physical line holding what the SWAP-ful circuit
    would have on line ``l``; ``measure_map[j]`` is the physical line to
    measure for logical qubit ``j``.
    """

    physical: Circuit
    permutation: tuple[int, ...]
    measure_map: tuple[int, ...]

    def to_json(self) -> dict:
        from matchgates.formats import circuit_to_json

        data = circuit_to_json(self.physical)
        data["permutation"] = list(self.permutation)
        data["measure_map"] = list(self.measure_map)
        return data


def encode_input(bits: str | Sequence[int]) -> ProductState:
    """Basis product state with each logical bit replaced by ``0000`` or ``1001``."""
    phys = []
    for b in bits:
        if str(b) not in ("0", "1"):
            raise DomainError(f"logical input must be bits, got {b!r}")
        phys.extend((1, 0, 0, 1) if str(b) == "1" else (0, 0, 0, 0))
    return ProductState.from_bits(phys)


class _Emitter:
    def __init__(self, n: int):
        self.n = n
        self.sigma = list(range(n))
        self.gates: list[MatchGate] = []

    def emit(self, a, b, lines: tuple[int, int]) -> None:
        j, k = self.sigma[lines[0]], self.sigma[lines[1]]
        # make_gate turns a reversed pair into G(A, XBX) on the sorted pair
        self.gates.append(make_gate(a, b, (j, k)))

    def swap(self, lines: tuple[int, int]) -> None:
        j, k = lines
        self.sigma[j], self.sigma[k] = self.sigma[k], self.sigma[j]


def compile_circuit(lc: LogicalCircuit) -> CompiledCircuit:
    """Translate ``lc`` to ``4m`` physical lines."""
    em = _Emitter(BLOCK * lc.m)
    for op in lc.ops:
        if isinstance(op, OneQubit):
            mat = np.asarray(op.matrix, dtype=complex)
            base = BLOCK * op.qubit
            outer = ((base + 2, base + 3), (base, base + 1))
            for pair in outer:
                em.emit(Z2, X2, pair)
            em.emit(mat, mat, (base + 1, base + 2))
            for pair in outer:
                em.emit(Z2, X2, pair)
        else:
            cross = (BLOCK * op.qubit + 3, BLOCK * op.qubit + 4)
            em.emit(H2, H2, cross)
            em.swap(cross)
            em.emit(X2, X2, cross)
            em.emit(H2, H2, cross)
    sigma = tuple(em.sigma)
    physical = Circuit(em.n, tuple(em.gates), name="compiled")
    return CompiledCircuit(physical, sigma, tuple(sigma[BLOCK * j] for j in range(lc.m)))


# the module-level name used in documentation and the CLI
compile = compile_circuit  # noqa: A001


def logical_unitary(lc: LogicalCircuit) -> np.ndarray:
    """Dense ``2^m`` unitary of the logical circuit (oracle side)."""
    d = 2**lc.m
    u = np.eye(d, dtype=complex)
    for op in lc.ops:
        if isinstance(op, OneQubit):
            u = oracle.embed(op.matrix, (op.qubit,), lc.m) @ u
        else:
            u = oracle.embed(CZ_MATRIX, (op.qubit, op.qubit + 1), lc.m) @ u
    return u


@dataclass(frozen=True)
class CompilationReport:
    ok: bool
    logical: tuple[float, ...]
    physical: tuple[float, ...]
    max_error: float
    validation_ok: bool
    problems: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def check_structure(lc: LogicalCircuit, cc: CompiledCircuit) -> list[str]:
    """Structural guarantees: distance <= 2, det-equality, count bound, displacement <= 1."""
    problems = [f"gate {v.gate_index} {v.lines}: {v.reason}" for v in validate_circuit(cc.physical, Policy.NN_AND_NEXT_NN).violations]
    g1, g2 = lc.counts
    if len(cc.physical) > 5 * g1 + 4 * g2:
        problems.append(f"gate count {len(cc.physical)} exceeds {5 * g1 + 4 * g2}")
    for line, target in enumerate(cc.permutation):
        if abs(target - line) > 1:
            problems.append(f"line {line} displaced to {target}")
    return problems


def verify_compilation(lc: LogicalCircuit, cc: CompiledCircuit, bits: str, tol: float = 1e-9) -> CompilationReport:
    """Compare per-qubit ``<Z>`` of the logical and compiled circuits with the dense oracle."""
    if BLOCK * lc.m > oracle.MAX_VECTOR_QUBITS:
        raise ResourceError(f"m={lc.m} needs {BLOCK * lc.m} physical qubits (cap {oracle.MAX_VECTOR_QUBITS})")
    if len(bits) != lc.m:
        raise DomainError("input bit string length differs from m")
    lv = oracle.StateVector(lc.m, logical_unitary(lc) @ oracle.basis_state(bits).amplitudes)
    logical = tuple(oracle.expectation_pauli_dense(lv, PauliString.from_letters(lc.m, {j: "Z"})) for j in range(lc.m))
    pv = oracle.run_circuit(cc.physical, oracle.from_product(encode_input(bits)))
    n = cc.physical.n
    physical = tuple(oracle.expectation_pauli_dense(pv, PauliString.from_letters(n, {cc.measure_map[j]: "Z"})) for j in range(lc.m))
    err = max(abs(a - b) for a, b in zip(logical, physical))
    problems = check_structure(lc, cc)
    return CompilationReport(err <= tol and not problems, logical, physical, err, not problems, tuple(problems))


def all_bitstrings(m: int) -> list[str]:
    return ["".join(bits) for bits in itertools.product("01", repeat=m)]
