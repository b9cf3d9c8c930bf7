"""Seeded random instances for tests, suites and benchmarks.

Every function takes a ``numpy.random.Generator``; :func:`rng` builds one
from an integer seed with PCG64, the only source of randomness in the package.
"""
from __future__ import annotations

import numpy as np

from matchgates.circuits import Circuit, MatchGate, make_gate
from matchgates.compiler import CZ, LogicalCircuit, OneQubit
from matchgates.gaussian import QuadraticHamiltonian
from matchgates.intertwine import CliffordCircuit, cnot, one
from matchgates.pauli import PauliString, ProductState


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.PCG64(int(seed)))


def unitary(gen: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-random unitary (QR of a complex Gaussian matrix with phase fix)."""
    z = (gen.standard_normal((dim, dim)) + 1j * gen.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def allowed_gate(gen: np.random.Generator, lines: tuple[int, int]) -> MatchGate:
    a = unitary(gen)
    b = unitary(gen)
    # rescale B by a square root of det A / det B so the determinants agree
    b = b * np.sqrt(np.linalg.det(a) / np.linalg.det(b))
    return make_gate(a, b, lines)


def nn_circuit(gen: np.random.Generator, n: int, gates: int) -> Circuit:
    out = []
    for _ in range(gates):
        k = int(gen.integers(0, n - 1))
        out.append(allowed_gate(gen, (k, k + 1)))
    return Circuit(n, tuple(out))


def product_state(gen: np.random.Generator, n: int) -> ProductState:
    v = gen.standard_normal((n, 2)) + 1j * gen.standard_normal((n, 2))
    return ProductState(v / np.linalg.norm(v, axis=1, keepdims=True))


def pauli(gen: np.random.Generator, n: int, hermitian: bool = True) -> PauliString:
    x = int(gen.integers(0, 2**n))
    z = int(gen.integers(0, 2**n))
    phase = int(gen.integers(0, 4))
    if hermitian:
        phase &= 2
    return PauliString(n, x, z, phase)


def hamiltonian(gen: np.random.Generator, n: int, scale: float = 1.0) -> QuadraticHamiltonian:
    h = gen.standard_normal((2 * n, 2 * n)) * scale
    return QuadraticHamiltonian(n, h - h.T)


def logical_circuit(gen: np.random.Generator, m: int, ops: int) -> LogicalCircuit:
    out = []
    for _ in range(ops):
        if m > 1 and gen.random() < 0.35:
            out.append(CZ(int(gen.integers(0, m - 1))))
        else:
            out.append(OneQubit(unitary(gen), int(gen.integers(0, m))))
    return LogicalCircuit(m, tuple(out))


def basis_bits(gen: np.random.Generator, m: int) -> str:
    return "".join(str(int(b)) for b in gen.integers(0, 2, m))


def clifford_circuit(gen: np.random.Generator, n: int, depth: int) -> CliffordCircuit:
    ops = []
    for _ in range(depth):
        if n > 1 and gen.random() < 0.4:
            c, t = gen.choice(n, 2, replace=False)
            ops.append(cnot(int(c), int(t)))
        else:
            ops.append(one(str(gen.choice(["H", "P", "X", "Y", "Z"])), int(gen.integers(0, n))))
    return CliffordCircuit(n, tuple(ops))
