"""Brute-force statevector reference used to check every fast path.

Line 0 is the most significant bit of an amplitude index, matching the
two-line gate convention of :mod:`matchgates.circuits`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from matchgates.circuits import Circuit, gate_matrix, is_unitary
from matchgates.clifford_algebra import GeneratorRep
from matchgates.errors import DimensionError, ResourceError, ValidationError
from matchgates.pauli import PauliString, ProductState

MAX_VECTOR_QUBITS = 12
MAX_UNITARY_QUBITS = 10
MAX_CONJUGATION_QUBITS = 8


def _cap(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise ResourceError(f"dense {what} refused for n={n} (cap {limit})")


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (2**self.n,):
            raise DimensionError("amplitude vector has the wrong length")
        self.amplitudes.setflags(write=False)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def from_product(s: ProductState) -> StateVector:
    _cap(s.n, MAX_VECTOR_QUBITS, "state vector")
    v = np.ones(1, dtype=complex)
    for f in s.factors:
        v = np.kron(v, f)
    return StateVector(s.n, v)


def basis_state(bits: str | Sequence[int]) -> StateVector:
    n = len(bits)
    _cap(n, MAX_VECTOR_QUBITS, "state vector")
    v = np.zeros(2**n, dtype=complex)
    v[int("".join(str(int(b)) for b in bits), 2) if n else 0] = 1
    return StateVector(n, v)


def _apply(tensor: np.ndarray, u: np.ndarray, lines: Sequence[int], n: int) -> np.ndarray:
    """Apply ``u`` to the leading ``n`` binary axes of ``tensor`` at ``lines``."""
    m = len(lines)
    ut = u.reshape((2,) * (2 * m))
    moved = np.tensordot(ut, tensor, axes=(list(range(m, 2 * m)), list(lines)))
    # tensordot puts the new axes first; restore line order
    return np.moveaxis(moved, list(range(m)), list(lines))


def apply_gate(v: StateVector, u: np.ndarray, lines: Sequence[int], tol: float = 1e-10) -> StateVector:
    """Apply a ``2**m x 2**m`` unitary to the listed lines (first line = high bit of ``u``)."""
    u = np.asarray(u, dtype=complex)
    lines = tuple(int(l) for l in lines)
    m = len(lines)
    if len(set(lines)) != m or any(not 0 <= l < v.n for l in lines):
        raise ValidationError(f"bad line tuple {lines} for n={v.n}")
    if u.shape != (2**m, 2**m):
        raise DimensionError(f"{u.shape} matrix cannot act on {m} lines")
    if not is_unitary(u, tol):
        raise ValidationError("gate matrix is not unitary")
    t = v.amplitudes.reshape((2,) * v.n)
    return StateVector(v.n, _apply(t, u, lines, v.n).reshape(-1))


def run_circuit(c: Circuit, v: StateVector) -> StateVector:
    for g in c.gates:
        v = apply_gate(v, gate_matrix(g), g.lines)
    return v


def pauli_apply(p: PauliString, amplitudes: np.ndarray) -> np.ndarray:
    """``P |v>`` by index arithmetic; works on vectors or on matrices column-wise."""
    n = p.n
    idx = np.arange(2**n)
    # line k lives at index bit n-1-k
    xmask = sum(((p.x >> k) & 1) << (n - 1 - k) for k in range(n))
    zmask = sum(((p.z >> k) & 1) << (n - 1 - k) for k in range(n))
    signs = 1 - 2 * (np.bitwise_count(idx & zmask).astype(np.int64) % 2)
    coeff = (1, 1j, -1, -1j)[p.xz_phase]
    out = np.empty_like(amplitudes, dtype=complex)
    out[idx ^ xmask] = (coeff * signs).reshape((-1,) + (1,) * (amplitudes.ndim - 1)) * amplitudes
    return out


def expectation_pauli_dense(v: StateVector, p: PauliString, tol: float = 1e-9) -> float:
    """``<v|P|v>``; must be real within ``tol`` for a Hermitian string."""
    if p.n != v.n:
        raise DimensionError("Pauli string and state sizes differ")
    val = np.vdot(v.amplitudes, pauli_apply(p, v.amplitudes))
    if p.is_hermitian() and abs(val.imag) > tol:
        raise ValidationError(f"Hermitian expectation has imaginary part {val.imag:.3g}")
    return float(val.real)


def expectation_z_dense(c: Circuit, s: ProductState, k: int) -> float:
    v = run_circuit(c, from_product(s))
    return expectation_pauli_dense(v, PauliString.from_letters(c.n, {k: "Z"}))


def embed(u: np.ndarray, lines: Sequence[int], n: int) -> np.ndarray:
    """Full ``2**n`` matrix of ``u`` acting on ``lines``."""
    _cap(n, MAX_UNITARY_QUBITS, "unitary")
    t = np.eye(2**n, dtype=complex).reshape((2,) * n + (2**n,))
    return _apply(t, np.asarray(u, dtype=complex), tuple(lines), n).reshape(2**n, 2**n)


def circuit_unitary(c: Circuit) -> np.ndarray:
    _cap(c.n, MAX_UNITARY_QUBITS, "unitary")
    d = 2**c.n
    t = np.eye(d, dtype=complex).reshape((2,) * c.n + (d,))
    for g in c.gates:
        t = _apply(t, gate_matrix(g), g.lines, c.n)
    return t.reshape(d, d)


def conjugate_dense(u: np.ndarray, p: PauliString | np.ndarray) -> np.ndarray:
    """``U^dagger P U`` as a dense matrix."""
    n = int(np.log2(u.shape[0]))
    _cap(n, MAX_CONJUGATION_QUBITS, "conjugation")
    pm = p.to_matrix() if isinstance(p, PauliString) else np.asarray(p)
    return u.conj().T @ pm @ u


def generator_matrices(rep: GeneratorRep) -> list[np.ndarray]:
    return [g.to_matrix() for g in rep.generators]


def dense_rotation(u: np.ndarray, rep: GeneratorRep) -> tuple[np.ndarray, float]:
    """Project ``U^dagger c_mu U`` onto the generators.

    Returns:
        ``(R, residual)`` where ``R[mu, nu] = Re Tr(U^dagger c_mu U c_nu) / 2**n``
        and ``residual`` is the largest normalized Frobenius distance between
        ``U^dagger c_mu U`` and its projection.
    """
    _cap(rep.n, MAX_CONJUGATION_QUBITS, "conjugation")
    d = 2**rep.n
    cs = generator_matrices(rep)
    r = np.empty((len(cs), len(cs)))
    worst = 0.0
    for mu, c in enumerate(cs):
        conj = u.conj().T @ c @ u
        coeffs = np.array([np.trace(conj @ cn).real / d for cn in cs])
        r[mu] = coeffs
        resid = conj - sum(a * cn for a, cn in zip(coeffs, cs))
        worst = max(worst, float(np.linalg.norm(resid) / np.sqrt(d)))
    return r, worst


def quadratic_hamiltonian_matrix(h: np.ndarray, rep: GeneratorRep) -> np.ndarray:
    """Dense ``H = i sum_{mu != nu} h[mu, nu] c_mu c_nu``."""
    cs = generator_matrices(rep)
    d = 2**rep.n
    out = np.zeros((d, d), dtype=complex)
    for mu in range(len(cs)):
        for nu in range(len(cs)):
            if mu != nu and h[mu, nu] != 0:
                out += 1j * h[mu, nu] * (cs[mu] @ cs[nu])
    return out


def expm_hermitian(hmat: np.ndarray, t: complex = 1j) -> np.ndarray:
    """``exp(t * H)`` for Hermitian ``H`` by eigendecomposition."""
    w, v = np.linalg.eigh(hmat)
    return (v * np.exp(t * w)) @ v.conj().T


def pauli_from_matrix(m: np.ndarray, tol: float = 1e-10) -> PauliString | None:
    """Identify a dense matrix as a phase-tagged Pauli string, or return ``None``."""
    d = m.shape[0]
    n = int(np.log2(d))
    # the unique candidate letter pattern is found from column 0
    row = int(np.argmax(np.abs(m[:, 0])))
    xmask_idx = row
    x = sum(((xmask_idx >> (n - 1 - k)) & 1) << k for k in range(n))
    for z in range(2**n):
        base = PauliString(n, x, z)
        bm = base.to_matrix()
        ov = np.vdot(bm, m) / d
        if abs(abs(ov) - 1) < tol:
            for ph in range(4):
                cand = base.times_phase(ph)
                if np.allclose(cand.to_matrix(), m, atol=tol, rtol=0):
                    return cand
    return None
