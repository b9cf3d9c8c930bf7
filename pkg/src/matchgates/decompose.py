"""Exact decomposition of Gaussian unitaries into nearest-neighbour G(A, B) gates.

The rotation of the target is factored into plane rotations (Givens column
sweep). Each plane rotation in generator coordinates ``(a, b)`` is the
rotation of ``exp(-theta c_a c_b)`` with ``theta = angle / 2``; when ``c_a``
and ``c_b`` sit on distant lines, a ladder of modified swaps ``G(Z, X)``
brings ``c_b`` next to ``c_a`` and back again.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from matchgates.circuits import Circuit, MatchGate, blocks_from_matrix, make_gate, modified_swap
from matchgates.clifford_algebra import jordan_wigner
from matchgates.errors import DomainError, ValidationError
from matchgates.gaussian import (
    ORTHO_TOL,
    QuadraticHamiltonian,
    Rotation,
    hamiltonian_to_rotation,
)

# Frozen by round trips through gate_to_rotation (see tests/test_decompose.py):
#   rotation of exp(iH) is exp(ROTATION_SIGN * 4h);
#   H = i theta c_a c_b has h[a, b] = H_ENTRY_PER_THETA * theta;
#   its plane rotation angle is PLANE_ANGLE_PER_THETA * theta.
ROTATION_SIGN = -1
H_ENTRY_PER_THETA = 0.5
PLANE_ANGLE_PER_THETA = 2.0

DROP_TOL = 1e-14


@dataclass(frozen=True)
class PlaneRotation:
    """Rotation by ``angle`` in generator coordinates ``(a, b)``, ``a < b``.

    Its matrix is the identity except ``[[cos, -sin], [sin, cos]]`` on rows and
    columns ``a, b``.
    """

    a: int
    b: int
    angle: float

    def __post_init__(self):
        if self.a == self.b or self.a < 0 or self.b < 0:
            raise DomainError(f"invalid plane {(self.a, self.b)}")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
            object.__setattr__(self, "angle", -self.angle)

    @property
    def plane(self) -> tuple[int, int]:
        return (self.a, self.b)

    def matrix(self, n: int) -> np.ndarray:
        if self.b >= 2 * n:
            raise DomainError(f"plane {self.plane} out of range for n={n}")
        m = np.eye(2 * n)
        c, s = np.cos(self.angle), np.sin(self.angle)
        m[self.a, self.a] = m[self.b, self.b] = c
        m[self.a, self.b] = -s
        m[self.b, self.a] = s
        return m


def givens_factorize(r: Rotation | np.ndarray) -> list[PlaneRotation]:
    """Factor ``R = r_1 r_2 ... r_M`` into plane rotations, ``M <= n(2n - 1)``.

    Column ``j`` is swept from top to bottom, zeroing ``R[i, j]`` for ``i > j``
    with a rotation in plane ``(j, i)``; the transposes of the sweep rotations
    are the factors. Factors with ``|sin| <= 1e-14`` and ``cos > 0`` are dropped.
    """
    mat = r.r if isinstance(r, Rotation) else np.asarray(r, dtype=float)
    dim = mat.shape[0]
    if mat.shape != (dim, dim) or dim % 2:
        raise ValidationError("rotation must be a square matrix of even size")
    if np.linalg.norm(mat.T @ mat - np.eye(dim)) > ORTHO_TOL:
        raise ValidationError("matrix is not orthogonal")
    if np.linalg.det(mat) <= 0:
        raise ValidationError("matrix has negative determinant")
    w = mat.copy()
    factors = []
    for j in range(dim - 1):
        for i in range(j + 1, dim):
            rho = np.hypot(w[j, j], w[i, j])
            if rho == 0:
                continue
            c, s = w[j, j] / rho, w[i, j] / rho
            if abs(s) <= DROP_TOL and c > 0:
                continue
            rj, ri = w[j].copy(), w[i].copy()
            w[j] = c * rj + s * ri
            w[i] = -s * rj + c * ri
            factors.append(PlaneRotation(j, i, float(np.arctan2(s, c))))
    return factors


def compose_planes(factors: list[PlaneRotation], n: int) -> np.ndarray:
    out = np.eye(2 * n)
    for f in factors:
        out = out @ f.matrix(n)
    return out


def _core_gate(a: int, b: int, theta: float, lines: tuple[int, int]) -> MatchGate:
    """``exp(-theta c_a c_b)`` as a G(A, B) on ``lines`` (both generators live there)."""
    base = 2 * lines[0]
    local = jordan_wigner(2)
    prod = local[a - base] * local[b - base]
    alpha = -theta * prod.coefficient
    letters = prod.without_phase().to_matrix()
    u = np.cosh(alpha) * np.eye(4) + np.sinh(alpha) * letters
    ma, mb = blocks_from_matrix(u)
    return make_gate(ma, mb, lines)


def plane_rotation_to_gates(pr: PlaneRotation, n: int) -> list[MatchGate]:
    """Nearest-neighbour allowed gates whose combined rotation is ``pr``."""
    if n < 2:
        raise DomainError("two-line gates need n >= 2")
    if pr.b >= 2 * n:
        raise DomainError(f"plane {pr.plane} out of range for n={n}")
    theta = pr.angle / PLANE_ANGLE_PER_THETA
    la, lb = pr.a // 2, pr.b // 2
    if lb - la <= 1:
        if la == lb:
            lines = (la, la + 1) if la + 1 < n else (la - 1, la)
        else:
            lines = (la, lb)
        return [_core_gate(pr.a, pr.b, theta, lines)]
    ladder_down = [modified_swap(k) for k in range(lb - 1, la, -1)]
    moved_b = pr.b - 2 * (lb - la - 1)
    core = _core_gate(pr.a, moved_b, theta, (la, la + 1))
    return ladder_down + [core] + ladder_down[::-1]


def decompose_rotation(rot: Rotation) -> Circuit:
    """N.n. circuit whose rotation equals ``rot``."""
    factors = givens_factorize(rot)
    gates: list[MatchGate] = []
    # R = r_1 ... r_M, so r_M's gates are applied first
    for f in reversed(factors):
        gates.extend(plane_rotation_to_gates(f, rot.n))
    return Circuit(rot.n, tuple(gates), name="gaussian-decomposition")


def decompose(q: QuadraticHamiltonian) -> Circuit:
    """N.n. circuit equal to ``exp(iH)`` up to a global phase."""
    return decompose_rotation(hamiltonian_to_rotation(q))


def gate_count_cap(n: int) -> int:
    return n * (2 * n - 1) * 4 * n


@dataclass(frozen=True)
class PhaseReport:
    fidelity: float
    phase: float


def global_phase(target: np.ndarray, circuit_unitary: np.ndarray) -> PhaseReport:
    """Fidelity ``|Tr(U^dagger V)| / 2^n`` and the phase ``delta`` with ``U ~ e^{i delta} V``."""
    ov = np.trace(circuit_unitary.conj().T @ target) / target.shape[0]
    return PhaseReport(float(abs(ov)), float(-np.angle(ov)))
