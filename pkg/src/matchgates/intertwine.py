"""Clifford conjugation of generator sets and of Gaussian circuits.

A Clifford circuit ``T`` (CNOT, H, P, X, Y, Z) turns the Jordan-Wigner
generators into ``c'_mu = T^dagger c_mu T``. Circuits built from gates
``T^dagger U T`` are simulated with the unchanged rotation of the base
circuit and product-state expectations of monomials in the ``c'``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from matchgates import oracle
from matchgates.circuits import Circuit, MatchGate, Policy, gate_matrix, require_valid
from matchgates.clifford_algebra import GeneratorRep, jordan_wigner
from matchgates.errors import DimensionError, DomainError, ValidationError
from matchgates.gaussian import circuit_to_rotation, expectation_pauli_rotation
from matchgates.pauli import PauliString, ProductState, pauli_mul

ONE_QUBIT = ("H", "P", "X", "Y", "Z")


@dataclass(frozen=True)
class CliffordOp:
    gate: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        gate = self.gate.upper()
        object.__setattr__(self, "gate", gate)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = 2 if gate == "CNOT" else 1
        if gate not in ONE_QUBIT + ("CNOT",):
            raise ValidationError(f"unknown Clifford gate {self.gate!r}")
        if len(self.qubits) != arity:
            raise ValidationError(f"{gate} takes {arity} line(s)")
        if gate == "CNOT" and self.qubits[0] == self.qubits[1]:
            raise ValidationError("CNOT control equals target")


def cnot(control: int, target: int) -> CliffordOp:
    return CliffordOp("CNOT", (control, target))


def one(gate: str, q: int) -> CliffordOp:
    return CliffordOp(gate, (q,))


@dataclass(frozen=True)
class CliffordCircuit:
    """Clifford gates on ``n`` lines in application order."""

    n: int
    ops: tuple[CliffordOp, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if any(not 0 <= q < self.n for q in op.qubits):
                raise ValidationError(f"{op.gate} on {op.qubits} out of range for n={self.n}")

    def unitary(self) -> np.ndarray:
        u = np.eye(2**self.n, dtype=complex)
        for op in self.ops:
            u = oracle.embed(_DENSE[op.gate], op.qubits, self.n) @ u
        return u

    def to_json(self) -> dict:
        ops = []
        for op in self.ops:
            if op.gate == "CNOT":
                ops.append({"g": "CNOT", "c": op.qubits[0], "t": op.qubits[1]})
            else:
                ops.append({"g": op.gate, "q": op.qubits[0]})
        return {"n": self.n, "ops": ops}

    @classmethod
    def from_json(cls, data: dict | str) -> CliffordCircuit:
        if isinstance(data, str):
            data = json.loads(data)
        ops = []
        for idx, op in enumerate(data["ops"]):
            try:
                if op["g"].upper() == "CNOT":
                    ops.append(cnot(op["c"], op["t"]))
                else:
                    ops.append(one(op["g"], op["q"]))
            except KeyError as exc:
                raise ValidationError(f"op {idx}: missing field {exc}") from None
        return cls(int(data["n"]), tuple(ops))


_DENSE = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "P": np.diag([1, 1j]),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "CNOT": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
}

# U^dagger X U and U^dagger Z U on one line, as (letter, phase exponent)
_ONE_QUBIT_IMAGES = {
    "H": (("Z", 0), ("X", 0)),
    "P": (("Y", 2), ("Z", 0)),
    "X": (("X", 0), ("Z", 2)),
    "Y": (("X", 2), ("Z", 2)),
    "Z": (("X", 2), ("Z", 0)),
}


def _conjugate_op(op: CliffordOp, p: PauliString) -> PauliString:
    """``U^dagger p U`` for a single gate, propagating X and Z factors separately."""
    n = p.n
    if op.gate == "CNOT":
        c, t = op.qubits
        cbit, tbit = 1 << c, 1 << t
        images_x = {c: PauliString(n, cbit | tbit, 0), t: PauliString(n, tbit, 0)}
        images_z = {c: PauliString(n, 0, cbit), t: PauliString(n, 0, cbit | tbit)}
    else:
        (q,) = op.qubits
        (lx, px), (lz, pz) = _ONE_QUBIT_IMAGES[op.gate]
        images_x = {q: PauliString.from_letters(n, {q: lx}, px)}
        images_z = {q: PauliString.from_letters(n, {q: lz}, pz)}
    touched = sum(1 << q for q in op.qubits)
    # p = i^q X^x Z^z; untouched lines pass through unchanged
    rest_x, rest_z = p.x & ~touched, p.z & ~touched
    out = PauliString(n, rest_x, 0, p.xz_phase)
    for q in op.qubits:
        if (p.x >> q) & 1:
            out = pauli_mul(out, images_x[q])
    # Z^z part of the untouched lines, then images of touched Z factors
    out = pauli_mul(out, PauliString(n, 0, rest_z))
    for q in op.qubits:
        if (p.z >> q) & 1:
            out = pauli_mul(out, images_z[q])
    return out


def conjugate_pauli(t: CliffordCircuit, p: PauliString) -> PauliString:
    """Exact ``T^dagger p T`` for ``T`` = the circuit's ops applied in order."""
    if t.n != p.n:
        raise DimensionError(f"Clifford circuit on {t.n} lines, Pauli string on {p.n}")
    for op in reversed(t.ops):
        p = _conjugate_op(op, p)
    return p


def conjugate_rep(t: CliffordCircuit, rep: GeneratorRep) -> GeneratorRep:
    if t.n != rep.n:
        raise DimensionError("Clifford circuit and representation sizes differ")
    return GeneratorRep(rep.n, tuple(conjugate_pauli(t, g) for g in rep.generators))


def example1_T(n: int, swaps: Iterable[tuple[int, int]]) -> CliffordCircuit:
    """SWAP network (each SWAP as three CNOTs), swaps applied in the given order."""
    ops = []
    for a, b in swaps:
        ops += [cnot(a, b), cnot(b, a), cnot(a, b)]
    return CliffordCircuit(n, tuple(ops))


def example2_T(n: int) -> CliffordCircuit:
    """``CNOT_{0,1} CNOT_{1,2} ... CNOT_{n-2,n-1} H_0 ... H_{n-1}`` as an operator product.

    Application order is therefore all Hadamards, then the CNOT chain from the
    last pair back to the first.
    """
    if n < 1:
        raise DomainError("n must be positive")
    ops = [one("H", q) for q in range(n)]
    ops += [cnot(k, k + 1) for k in range(n - 2, -1, -1)]
    return CliffordCircuit(n, tuple(ops))


def example3_T(n: int) -> CliffordCircuit:
    """``(CNOT_{0,1} CNOT_{2,3} ...)(CNOT_{2,1} CNOT_{4,3} ...)`` for odd ``n``.

    The right-hand group (controls on even lines 2, 4, ..., targets one line
    below) is applied first.
    """
    if n < 3 or n % 2 == 0:
        raise DomainError("example 3 needs odd n >= 3")
    second = [cnot(k + 1, k) for k in range(1, n - 1, 2)]
    first = [cnot(k, k + 1) for k in range(0, n - 2, 2)]
    return CliffordCircuit(n, tuple(second + first))


@dataclass(frozen=True, eq=False)
class ConjugatedGate:
    support: tuple[int, ...]
    matrix: np.ndarray

    @property
    def locality(self) -> int:
        return len(self.support)


def _acts_trivially(m: np.ndarray, line: int, n: int, tol: float) -> bool:
    for letter in ("X", "Z"):
        p = PauliString.from_letters(n, {line: letter}).to_matrix()
        if np.abs(m @ p - p @ m).max() > tol:
            return False
    return True


def restrict(m: np.ndarray, support: Sequence[int], n: int) -> np.ndarray:
    """Operator on ``support`` from an operator acting trivially elsewhere (normalized partial trace)."""
    support = tuple(support)
    rest = [l for l in range(n) if l not in support]
    t = m.reshape((2,) * (2 * n))
    order = list(support) + rest
    t = t.transpose(order + [n + l for l in order])
    k = len(support)
    dk, dr = 2**k, 2 ** (n - k)
    t = t.reshape(dk, dr, dk, dr)
    return np.einsum("ajbj->ab", t) / dr


def conjugated_gate(t: CliffordCircuit, g: MatchGate, tol: float = 1e-10) -> ConjugatedGate:
    """``T^dagger U T`` densely, with the lines it actually touches and its restriction there."""
    full = oracle.embed(gate_matrix(g), g.lines, t.n)
    tu = t.unitary()
    m = tu.conj().T @ full @ tu
    support = tuple(l for l in range(t.n) if not _acts_trivially(m, l, t.n, tol))
    return ConjugatedGate(support, restrict(m, support, t.n))


def conjugated_circuit_unitary(t: CliffordCircuit, base: Circuit) -> np.ndarray:
    tu = t.unitary()
    return tu.conj().T @ oracle.circuit_unitary(base) @ tu


def simulate_intertwined(
    t: CliffordCircuit,
    base: Circuit,
    s: ProductState,
    target: PauliString,
    degree_cap: int = 2,
    backend: str | None = None,
) -> float:
    """``<target>`` after the conjugated circuit ``T^dagger base T`` on the product input ``s``."""
    if not (t.n == base.n == s.n == target.n):
        raise DimensionError("Clifford circuit, base circuit, state and target sizes differ")
    require_valid(base, Policy.NN_ONLY)
    rep = conjugated_jw(t)
    return expectation_pauli_rotation(circuit_to_rotation(base), rep, target, s, degree_cap, backend)


def conjugated_jw(t: CliffordCircuit) -> GeneratorRep:
    return conjugate_rep(t, jordan_wigner(t.n))


def surviving_quadratic_terms(t: CliffordCircuit, lines: Sequence[int]) -> list[tuple[int, int]]:
    """Generator pairs ``(a, b)``, ``a < b``, with ``c'_a c'_b`` supported inside ``lines``.

    All ``2n`` conjugated generators are considered, so the count is the
    dimension of the quadratic Hamiltonians that stay local to ``lines``.
    """
    rep = conjugated_jw(t)
    window = sum(1 << l for l in lines)
    out = []
    for a, b in itertools.combinations(range(2 * t.n), 2):
        prod = pauli_mul(rep[a], rep[b])
        if (prod.x | prod.z) & ~window == 0:
            out.append((a, b))
    return out


def golden_surviving_terms() -> dict:
    """Recorded output of :func:`surviving_quadratic_terms` for ``example3_T(9)``, all 4-line windows."""
    from importlib import resources

    return json.loads(resources.files("matchgates").joinpath("data/example3_surviving_terms.json").read_text())
