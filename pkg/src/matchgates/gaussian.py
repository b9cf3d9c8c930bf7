"""SO(2n) propagation of Majorana generators through Gaussian circuits.

Conventions (pinned by round-trip tests):

* The rotation of a unitary ``U`` is the matrix ``R`` with
  ``U^dagger c_mu U = sum_nu R[mu, nu] c_nu`` (Heisenberg picture).
* A circuit applied gate by gate has rotation ``R_last @ ... @ R_first``.
* For ``H = i sum h[mu, nu] c_mu c_nu`` the unitary ``exp(iH)`` has rotation
  ``exp(-4h)``. Conjugating the other way, ``U c_mu U^dagger``, gives ``exp(4h)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from matchgates import kernels
from matchgates.circuits import Circuit, MatchGate, Policy, gate_matrix, require_valid
from matchgates.clifford_algebra import GeneratorRep, decompose_pauli, jordan_wigner
from matchgates.errors import (
    DegreeTooHigh,
    DimensionError,
    DomainError,
    NonGaussianGate,
    ToleranceError,
    ValidationError,
)
from matchgates.pauli import PauliString, ProductState

ORTHO_TOL = 1e-9
RESIDUAL_TOL = 1e-9
IMAG_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Rotation:
    """A ``2n x 2n`` real orthogonal matrix with determinant +1."""

    n: int
    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        if r.shape != (2 * self.n, 2 * self.n):
            raise DimensionError(f"rotation for n={self.n} must be {2 * self.n}x{2 * self.n}")
        err = np.linalg.norm(r.T @ r - np.eye(2 * self.n))
        if err > ORTHO_TOL:
            raise ValidationError(f"matrix is not orthogonal (||R^T R - I||_F = {err:.3g})")
        if np.linalg.det(r) <= 0:
            raise ValidationError("rotation has negative determinant")
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @classmethod
    def identity(cls, n: int) -> Rotation:
        return cls(n, np.eye(2 * n))

    def __matmul__(self, other: Rotation) -> Rotation:
        return Rotation(self.n, self.r @ other.r)

    def orthogonality_error(self) -> float:
        return float(np.linalg.norm(self.r.T @ self.r - np.eye(2 * self.n)))

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r.tolist()}

    @classmethod
    def from_json(cls, data: dict | str) -> Rotation:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["n"]), np.array(data["r"], dtype=float))


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """Coefficients of ``H = i sum_{mu != nu} h[mu, nu] c_mu c_nu``; ``h`` is made antisymmetric."""

    n: int
    h: np.ndarray

    def __post_init__(self):
        h = np.array(self.h, dtype=float)
        if h.shape != (2 * self.n, 2 * self.n):
            raise DimensionError(f"h for n={self.n} must be {2 * self.n}x{2 * self.n}")
        h = (h - h.T) / 2
        h.setflags(write=False)
        object.__setattr__(self, "h", h)

    @classmethod
    def from_json(cls, data: dict | str, tol: float = 1e-12) -> QuadraticHamiltonian:
        if isinstance(data, str):
            data = json.loads(data)
        h = np.array(data["h"], dtype=float)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValidationError("h must be a square matrix")
        asym = np.abs(h + h.T).max() if h.size else 0.0
        if asym > tol:
            raise ValidationError(f"h is not antisymmetric (max |h + h^T| = {asym:.3g})")
        return cls(int(data["n"]), h)

    def to_json(self) -> dict:
        return {"n": self.n, "h": self.h.tolist()}


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring a truncated Taylor series.

    The matrix is scaled to norm at most 1/2 and the series is summed until
    the next term is below machine precision relative to the partial sum.
    """
    a = np.asarray(a, dtype=float)
    norm = np.linalg.norm(a, 1)
    s = max(0, int(np.ceil(np.log2(norm / 0.5)))) if norm > 0.5 else 0
    b = a / 2.0**s
    out = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, 40):
        term = term @ b / k
        out = out + term
        if np.linalg.norm(term, 1) <= 1e-17 * np.linalg.norm(out, 1):
            break
    for _ in range(s):
        out = out @ out
    return out


def hamiltonian_to_rotation(q: QuadraticHamiltonian) -> Rotation:
    """Rotation of ``exp(iH)``, namely ``exp(-4h)``."""
    return Rotation(q.n, expm(-4 * q.h))


@lru_cache(maxsize=None)
def _local_generators(width: int) -> tuple[np.ndarray, ...]:
    return tuple(g.to_matrix() for g in jordan_wigner(width).generators)


def local_rotation(u: np.ndarray, width: int, tol: float = RESIDUAL_TOL) -> tuple[np.ndarray, float]:
    """Rotation block of a unitary on ``width`` consecutive lines.

    ``R[mu, nu] = Re Tr(U^dagger g_mu U g_nu) / 2**width`` over the local
    Jordan-Wigner generators ``g``; the reconstruction residual certifies that
    ``U`` is Gaussian.

    Raises:
        NonGaussianGate: some ``U^dagger g_mu U`` leaves the span by more than ``tol``.
    """
    u = np.asarray(u, dtype=complex)
    dim = 2**width
    if u.shape != (dim, dim):
        raise DimensionError(f"expected a {dim}x{dim} unitary")
    gens = _local_generators(width)
    stack = np.array(gens)
    conj = np.einsum("ji,ajk,kl->ail", u.conj(), stack, u)
    r = np.einsum("aij,bji->ab", conj, stack).real / dim
    resid = conj - np.einsum("ab,bij->aij", r, stack)
    worst = float(np.max(np.linalg.norm(resid, axis=(1, 2))) / np.sqrt(dim))
    if worst > tol:
        raise NonGaussianGate(f"conjugated generators leave their span (residual {worst:.3g})", worst)
    return r, worst


def gate_to_rotation(g: MatchGate, n: int) -> Rotation:
    """Embed the 4x4 rotation block of a nearest-neighbour allowed gate into ``SO(2n)``."""
    if not g.allowed:
        raise ValidationError(f"gate on {g.lines} is not an allowed G(A,B) (det mismatch)")
    if g.distance != 1:
        raise ValidationError(f"gate on {g.lines} is not nearest-neighbour")
    if g.lines[1] >= n:
        raise DimensionError(f"gate on {g.lines} does not fit in n={n}")
    block, _ = local_rotation(gate_matrix(g), 2)
    r = np.eye(2 * n)
    k = 2 * g.lines[0]
    r[k : k + 4, k : k + 4] = block
    return Rotation(n, r)


def circuit_to_rotation(c: Circuit) -> Rotation:
    """Product ``R_last ... R_first`` of the gate rotations of an n.n. circuit."""
    require_valid(c, Policy.NN_ONLY)
    r = np.eye(2 * c.n)
    cache: dict[int, np.ndarray] = {}
    for g in c.gates:
        key = id(g)
        if key not in cache:
            cache[key] = local_rotation(gate_matrix(g), 2)[0]
        k = 2 * g.lines[0]
        # left-multiplying by the embedded block only touches four rows
        r[k : k + 4] = cache[key] @ r[k : k + 4]
    return Rotation(c.n, r)


def input_moments(rep: GeneratorRep, s: ProductState) -> np.ndarray:
    """``M[mu, nu] = <s| c_mu c_nu |s>``."""
    if rep.n != s.n:
        raise DimensionError(f"representation on {rep.n} lines, state on {s.n}")
    m = 2 * rep.n
    idx = np.stack(np.meshgrid(np.arange(m), np.arange(m), indexing="ij"), axis=-1).reshape(-1, 2)
    return kernels.monomial_values(idx, rep, s.bloch_table()).reshape(m, m)


@dataclass(frozen=True)
class ZExpectation:
    """``<Z_k>`` with outcome probabilities clamped to [0, 1]."""

    value: float
    p0: float
    p1: float
    imag: float = 0.0

    def __float__(self) -> float:
        return self.value


def probabilities(value: float) -> tuple[float, float]:
    p0 = min(1.0, max(0.0, (1 + value) / 2))
    return p0, 1.0 - p0


def _real(value: complex, tol: float) -> float:
    if abs(value.imag) > tol:
        raise ToleranceError(f"expectation has imaginary part {value.imag:.3g}")
    return float(value.real)


def expectation_z(c: Circuit, s: ProductState, k: int, rotation: Rotation | None = None) -> ZExpectation:
    """``<Z_k>`` after ``c`` on the product input ``s``, in O(n^2) from the moment matrix."""
    if s.n != c.n:
        raise DimensionError(f"circuit on {c.n} lines, state on {s.n}")
    if not 0 <= k < c.n:
        raise DomainError(f"line {k} out of range for n={c.n}")
    rot = rotation if rotation is not None else circuit_to_rotation(c)
    m = input_moments(jordan_wigner(c.n), s)
    raw = -1j * (rot.r[2 * k] @ m @ rot.r[2 * k + 1])
    value = _real(raw, IMAG_TOL)
    if abs(value) > 1 + IMAG_TOL:
        raise ToleranceError(f"<Z> = {value!r} outside [-1, 1]")
    p0, p1 = probabilities(value)
    return ZExpectation(value, p0, p1, float(raw.imag))


def expectation_pauli_rotation(
    rot: Rotation,
    rep: GeneratorRep,
    target: PauliString,
    s: ProductState,
    degree_cap: int = 2,
    backend: str | None = None,
) -> float:
    """Expectation of ``target`` for a circuit given by its rotation, in representation ``rep``.

    The sum runs over all index tuples, repeats included.

    Raises:
        DegreeTooHigh: ``target`` needs a monomial longer than ``degree_cap``.
    """
    if not (rot.n == rep.n == target.n == s.n):
        raise DimensionError("rotation, representation, target and state sizes differ")
    dec = decompose_pauli(rep, target)
    if dec.degree > degree_cap:
        raise DegreeTooHigh(dec.degree, degree_cap)
    rows = rot.r[list(dec.indices)]
    raw = dec.coefficient * kernels.rotated_monomial_sum(rows, rep, s.bloch_table(), backend)
    return _real(raw, max(IMAG_TOL, 1e-12 * (2 * rep.n) ** dec.degree))


def expectation_pauli(
    c: Circuit,
    rep: GeneratorRep,
    target: PauliString,
    s: ProductState,
    degree_cap: int = 2,
    backend: str | None = None,
) -> float:
    """Expectation of ``target`` after ``c``, evaluating monomials in ``rep``.

    ``c`` is propagated with its Jordan-Wigner rotation; with another ``rep``
    this is the circuit whose gates are conjugated into that representation.
    """
    return expectation_pauli_rotation(circuit_to_rotation(c), rep, target, s, degree_cap, backend)
