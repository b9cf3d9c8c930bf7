"""Two-qubit G(A, B) gates, circuits of them, and line-distance validation.

Basis order of a two-line gate is ``|00>, |01>, |10>, |11>`` with the first
(lower-numbered) line as the more significant bit. ``A`` acts on the even
parity span ``{|00>, |11>}`` and ``B`` on the odd span ``{|01>, |10>}``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from matchgates.errors import DomainError, ValidationError

DEFAULT_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

_EVEN = (0, 3)
_ODD = (1, 2)


def _as_block(m, name: str) -> np.ndarray:
    arr = np.array(m, dtype=complex)
    if arr.shape != (2, 2):
        raise ValidationError(f"{name} block must be 2x2, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.allclose(m.conj().T @ m, np.eye(m.shape[0]), rtol=0, atol=tol))


@dataclass(frozen=True, eq=False)
class MatchGate:
    """A ``G(A, B)`` (``allowed``) or ``G~(A, B)`` record on an ordered line pair."""

    a: np.ndarray
    b: np.ndarray
    lines: tuple[int, int]
    allowed: bool

    @property
    def distance(self) -> int:
        return self.lines[1] - self.lines[0]

    @property
    def kind(self) -> str:
        return "G" if self.allowed else "Gtilde"

    def matrix(self) -> np.ndarray:
        return gate_matrix(self)

    def on(self, lines: tuple[int, int]) -> MatchGate:
        """Same blocks on another line pair (first line keeps the high-bit role)."""
        return make_gate(self.a, self.b, lines)

    def adjoint(self) -> MatchGate:
        return make_gate(self.a.conj().T, self.b.conj().T, self.lines)

    def __repr__(self) -> str:
        return f"MatchGate({self.kind}, lines={self.lines})"


def make_gate(a, b, lines: Sequence[int], tol: float = DEFAULT_TOL) -> MatchGate:
    """Build ``G(A, B)`` on ``lines``.

    A pair given in descending order is the same operator with the line roles
    exchanged, i.e. ``G(A, XBX)`` on the sorted pair.

    Raises:
        ValidationError: a block is not unitary, or the lines coincide / are negative.
    """
    a = _as_block(a, "A")
    b = _as_block(b, "B")
    if not is_unitary(a, tol):
        raise ValidationError("A block is not unitary")
    if not is_unitary(b, tol):
        raise ValidationError("B block is not unitary")
    j, k = (int(v) for v in lines)
    if j == k or j < 0 or k < 0:
        raise ValidationError(f"invalid line pair {(j, k)}")
    if j > k:
        b = _as_block(X2 @ b @ X2, "B")
        j, k = k, j
    allowed = abs(np.linalg.det(a) - np.linalg.det(b)) <= tol
    return MatchGate(a, b, (j, k), bool(allowed))


def gate_matrix(g: MatchGate) -> np.ndarray:
    """The 4x4 block embedding of ``A`` (even parity) and ``B`` (odd parity)."""
    u = np.zeros((4, 4), dtype=complex)
    u[np.ix_(_EVEN, _EVEN)] = g.a
    u[np.ix_(_ODD, _ODD)] = g.b
    return u


def blocks_from_matrix(u: np.ndarray, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Split a parity-preserving 4x4 matrix into its ``(A, B)`` blocks."""
    u = np.asarray(u, dtype=complex)
    mixed = np.abs(u[np.ix_(_EVEN, _ODD)]).max() + np.abs(u[np.ix_(_ODD, _EVEN)]).max()
    if mixed > tol:
        raise ValidationError("matrix does not preserve two-qubit parity")
    return u[np.ix_(_EVEN, _EVEN)].copy(), u[np.ix_(_ODD, _ODD)].copy()


NAMED_BLOCKS = {
    "ID": (I2, I2),
    "SWAP": (I2, X2),
    "CZ": (Z2, I2),
}


def named_gate(name: str, lines: Sequence[int]) -> MatchGate:
    """``ID = G(I, I)``, ``SWAP = G~(I, X)``, ``CZ = G~(Z, I)``."""
    try:
        a, b = NAMED_BLOCKS[name.upper()]
    except KeyError:
        raise ValidationError(f"unknown named gate {name!r}") from None
    return make_gate(a, b, lines)


def modified_swap(k: int) -> MatchGate:
    """``G(Z, X) = CZ . SWAP`` on lines ``(k, k + 1)``; exchanges the Majorana pairs of the two lines."""
    return make_gate(Z2, X2, (k, k + 1))


class Policy(enum.Enum):
    NN_ONLY = 1
    NN_AND_NEXT_NN = 2
    ANY = 3

    @property
    def max_distance(self) -> int | None:
        return {Policy.NN_ONLY: 1, Policy.NN_AND_NEXT_NN: 2, Policy.ANY: None}[self]


@dataclass(frozen=True)
class Circuit:
    """Gates on ``n`` lines, applied in sequence order."""

    n: int
    gates: tuple[MatchGate, ...] = ()
    name: str = ""
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n < 1:
            raise DomainError("a circuit needs at least one line")
        for idx, g in enumerate(self.gates):
            if g.lines[1] >= self.n:
                raise ValidationError(f"gate {idx} on lines {g.lines} exceeds n={self.n}")

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n != self.n:
            raise ValidationError("cannot concatenate circuits on different line counts")
        return Circuit(self.n, self.gates + other.gates, self.name, self.description)

    def append(self, gates: Iterable[MatchGate]) -> Circuit:
        return Circuit(self.n, self.gates + tuple(gates), self.name, self.description)

    def inverse(self) -> Circuit:
        return Circuit(self.n, tuple(g.adjoint() for g in reversed(self.gates)), self.name)


@dataclass(frozen=True)
class Violation:
    gate_index: int
    lines: tuple[int, int]
    reason: str


@dataclass(frozen=True)
class CircuitReport:
    ok: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def validate_circuit(c: Circuit, policy: Policy = Policy.NN_ONLY) -> CircuitReport:
    """Check det-equality of every gate and its line distance against ``policy``."""
    out = []
    limit = policy.max_distance
    for idx, g in enumerate(c.gates):
        if not g.allowed:
            out.append(Violation(idx, g.lines, "det mismatch"))
        if limit is not None and g.distance > limit:
            out.append(Violation(idx, g.lines, f"line distance {g.distance} exceeds {limit}"))
    return CircuitReport(not out, tuple(out))


def require_valid(c: Circuit, policy: Policy = Policy.NN_ONLY) -> None:
    rep = validate_circuit(c, policy)
    if not rep.ok:
        v = rep.violations[0]
        raise ValidationError(f"gate {v.gate_index} on lines {v.lines}: {v.reason}")
