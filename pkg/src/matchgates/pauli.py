"""Phase-exact Pauli strings and product-state expectation values.

A :class:`PauliString` on ``n`` lines stores its X and Z components as integer
bitmasks (bit ``k`` belongs to line ``k``) together with a phase exponent
``phase`` such that the operator is ``i**phase`` times the tensor product of
the single-line letters ``I, X, Y, Z``. Letters are Hermitian, so a string is
Hermitian exactly when ``phase`` is even.

All arithmetic on strings is exact integer arithmetic. Line 0 is the leftmost
letter of the text form, e.g. ``"-i ZXY"`` is ``-i * Z_0 X_1 Y_2`` and
``"+1 XX"`` is ``X_0 X_1``. Parsing also accepts a bare letter string.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from matchgates.errors import DimensionError, DomainError, ValidationError

_PHASE_TEXT = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_TEXT_PHASE = {"": 0, "+": 0, "+1": 0, "1": 0, "+i": 1, "i": 1, "-": 2, "-1": 2, "-i": 3}
_LABEL_RE = re.compile(r"^\s*([+-]?(?:1|i)?)\s*([IXYZ]+)\s*$")

# letter code = x + 2 z
LETTERS = "IXZY"


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PauliString:
    """``i**phase`` times a tensor product of single-line Pauli letters.

    Attributes:
        n: number of lines.
        x: X-component bitmask (bit ``k`` set when line ``k`` carries X or Y).
        z: Z-component bitmask (bit ``k`` set when line ``k`` carries Z or Y).
        phase: exponent of ``i``, always reduced modulo 4.
    """

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("qubit count must be non-negative")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise ValidationError(f"bitmask wider than {self.n} lines")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse text such as ``"XZIY"``, ``"-i ZXY"`` or ``"+i XX"``."""
        m = _LABEL_RE.match(label)
        if m is None:
            raise ValidationError(f"cannot parse Pauli label {label!r}")
        sign, letters = m.groups()
        x = z = 0
        for k, ch in enumerate(letters):
            code = LETTERS.index(ch)
            x |= (code & 1) << k
            z |= (code >> 1) << k
        return cls(len(letters), x, z, _TEXT_PHASE[sign])

    @classmethod
    def from_letters(cls, n: int, letters: dict[int, str], phase: int = 0) -> PauliString:
        """Build a string from a sparse ``{line: letter}`` mapping."""
        x = z = 0
        for line, ch in letters.items():
            if not 0 <= line < n:
                raise DomainError(f"line {line} out of range for n={n}")
            code = LETTERS.index(ch)
            x |= (code & 1) << line
            z |= (code >> 1) << line
        return cls(n, x, z, phase)

    @classmethod
    def from_bits(cls, x_bits: Sequence[int], z_bits: Sequence[int], phase: int = 0) -> PauliString:
        if len(x_bits) != len(z_bits):
            raise DimensionError("x and z bit vectors differ in length")
        x = sum(int(bool(b)) << k for k, b in enumerate(x_bits))
        z = sum(int(bool(b)) << k for k, b in enumerate(z_bits))
        return cls(len(x_bits), x, z, phase)

    # -- views --------------------------------------------------------------
    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> k) & 1 for k in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> k) & 1 for k in range(self.n))

    @property
    def letters(self) -> str:
        return "".join(self.letter(k) for k in range(self.n))

    def letter(self, line: int) -> str:
        return LETTERS[((self.x >> line) & 1) | (((self.z >> line) & 1) << 1)]

    @property
    def support(self) -> tuple[int, ...]:
        """Lines carrying a non-identity letter."""
        mask = self.x | self.z
        return tuple(k for k in range(self.n) if (mask >> k) & 1)

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def coefficient(self) -> complex:
        return (1, 1j, -1, -1j)[self.phase]

    @property
    def xz_phase(self) -> int:
        """Phase exponent ``q`` of the form ``i**q X^x Z^z`` (X factors to the left)."""
        return (self.phase + _popcount(self.x & self.z)) % 4

    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def symplectic_vector(self) -> int:
        """Bits ``x | z << n`` packed into one integer (phase discarded)."""
        return self.x | (self.z << self.n)

    def __str__(self) -> str:
        return f"{_PHASE_TEXT[self.phase]} {self.letters}"

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"

    # -- algebra ------------------------------------------------------------
    def __mul__(self, other: PauliString) -> PauliString:
        return pauli_mul(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, self.phase + 2)

    def times_phase(self, k: int) -> PauliString:
        """Multiply by ``i**k``."""
        return PauliString(self.n, self.x, self.z, self.phase + k)

    def adjoint(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, -self.phase)

    def without_phase(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, 0)

    def permute_lines(self, perm: Sequence[int]) -> PauliString:
        """Move the letter on line ``k`` to line ``perm[k]``."""
        if len(perm) != self.n:
            raise DimensionError("permutation length differs from qubit count")
        x = z = 0
        for k, target in enumerate(perm):
            x |= ((self.x >> k) & 1) << target
            z |= ((self.z >> k) & 1) << target
        return PauliString(self.n, x, z, self.phase)

    def to_matrix(self) -> np.ndarray:
        """Dense ``2**n x 2**n`` matrix with line 0 as the most significant bit."""
        out = np.array([[self.coefficient]], dtype=complex)
        for k in range(self.n):
            out = np.kron(out, PAULI_MATRICES[self.letter(k)])
        return out


PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _check_sizes(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise DimensionError(f"Pauli strings act on {p.n} and {q.n} lines")


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Exact operator product ``p @ q``."""
    _check_sizes(p, q)
    x = p.x ^ q.x
    z = p.z ^ q.z
    # i^{xz} X^x Z^z form: moving Z^{z1} past X^{x2} costs (-1)^{z1.x2}
    phase = (
        p.phase
        + q.phase
        + _popcount(p.x & p.z)
        + _popcount(q.x & q.z)
        - _popcount(x & z)
        + 2 * _popcount(p.z & q.x)
    )
    return PauliString(p.n, x, z, phase)


def pauli_product(factors: Iterable[PauliString], n: int | None = None) -> PauliString:
    """Ordered product of several strings; the empty product needs ``n``."""
    out = None
    for f in factors:
        out = f if out is None else pauli_mul(out, f)
    if out is None:
        if n is None:
            raise DomainError("empty product needs an explicit qubit count")
        return PauliString.identity(n)
    return out


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff ``pq == qp``, from the symplectic inner product."""
    _check_sizes(p, q)
    return (_popcount(p.x & q.z) + _popcount(p.z & q.x)) % 2 == 0


class ProductState:
    """A product of ``n`` normalized single-qubit states.

    Args:
        factors: array-like of shape ``(n, 2)``; row ``k`` holds the amplitudes
            of line ``k`` in the order ``(|0>, |1>)``.
        atol: allowed deviation of each factor's norm from 1.
    """

    def __init__(self, factors, atol: float = 1e-12):
        arr = np.array(factors, dtype=complex)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DimensionError("product state factors must have shape (n, 2)")
        norms = np.linalg.norm(arr, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1) > atol)
        if bad.size:
            raise ValidationError(f"factor on line {int(bad[0])} has norm {norms[bad[0]]:.15g}")
        arr.setflags(write=False)
        self._factors = arr

    @classmethod
    def zeros(cls, n: int) -> ProductState:
        f = np.zeros((n, 2), dtype=complex)
        f[:, 0] = 1
        return cls(f)

    @classmethod
    def from_bits(cls, bits: str | Sequence[int]) -> ProductState:
        f = np.zeros((len(bits), 2), dtype=complex)
        for k, b in enumerate(bits):
            f[k, int(b)] = 1
        return cls(f)

    @property
    def factors(self) -> np.ndarray:
        return self._factors

    @property
    def n(self) -> int:
        return self._factors.shape[0]

    def bloch_table(self) -> np.ndarray:
        """Single-line expectations as an ``(n, 4)`` real array in letter-code order I, X, Z, Y."""
        a = self._factors[:, 0]
        b = self._factors[:, 1]
        ab = np.conj(a) * b
        table = np.empty((self.n, 4))
        table[:, 0] = 1.0
        table[:, 1] = 2 * ab.real
        table[:, 2] = np.abs(a) ** 2 - np.abs(b) ** 2
        table[:, 3] = 2 * ab.imag
        return table

    def __repr__(self) -> str:
        return f"ProductState(n={self.n})"


def single_line_expectation(letter: str, xi: Sequence[complex]) -> float:
    """``<xi|P|xi>`` for a letter in ``IXYZ`` by the closed-form 2x2 sandwich."""
    a, b = complex(xi[0]), complex(xi[1])
    ab = a.conjugate() * b
    return {
        "I": 1.0,
        "X": 2 * ab.real,
        "Y": 2 * ab.imag,
        "Z": abs(a) ** 2 - abs(b) ** 2,
    }[letter]


def pauli_expectation(p: PauliString, s: ProductState) -> complex:
    """``<s|p|s>`` as the phase times the product of single-line expectations."""
    if p.n != s.n:
        raise DimensionError(f"Pauli string on {p.n} lines, state on {s.n}")
    table = s.bloch_table()
    value = complex(p.coefficient)
    for k in range(p.n):
        code = ((p.x >> k) & 1) | (((p.z >> k) & 1) << 1)
        if code:
            value *= table[k, code]
            if value == 0:
                return 0j
    return value
