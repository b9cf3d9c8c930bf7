"""Pauli-string representations of the Clifford algebra on ``2n`` generators.

Generators are indexed from 0: the Majorana pair of line ``k`` is
``(2k, 2k + 1)``. A monomial is an ordered tuple of generator indices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from matchgates.errors import DimensionError, DomainError, MatchgateError
from matchgates.pauli import PauliString, ProductState, pauli_expectation, pauli_mul, pauli_product


@dataclass(frozen=True)
class GeneratorRep:
    """An ordered list of ``2n`` Pauli strings meant to satisfy ``{c_a, c_b} = 2 delta_ab``.

    Construction does not check the algebra relations; call :func:`verify_rep`.
    """

    n: int
    generators: tuple[PauliString, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if len(gens) != 2 * self.n:
            raise DimensionError(f"expected {2 * self.n} generators, got {len(gens)}")
        for g in gens:
            if g.n != self.n:
                raise DimensionError("generator acts on the wrong number of lines")

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, mu: int) -> PauliString:
        return self.generators[mu]

    def __iter__(self):
        return iter(self.generators)

    def monomial(self, indices: Sequence[int]) -> PauliString:
        """Ordered product ``c_{i_1} c_{i_2} ...`` of generators."""
        _check_indices(self, indices)
        return pauli_product((self.generators[i] for i in indices), self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "generators": [str(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict | str) -> GeneratorRep:
        if isinstance(data, str):
            data = json.loads(data)
        gens = tuple(PauliString.from_label(t) for t in data["generators"])
        return cls(int(data["n"]), gens)


@dataclass(frozen=True)
class RepReport:
    """Outcome of :func:`verify_rep`. ``pair`` names the first offending generators."""

    ok: bool
    reason: str = ""
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class MonomialDecomposition:
    """``target == i**phase * prod(c_mu for mu in indices)`` with ascending indices."""

    indices: tuple[int, ...]
    phase: int

    @property
    def degree(self) -> int:
        return len(self.indices)

    @property
    def coefficient(self) -> complex:
        return (1, 1j, -1, -1j)[self.phase % 4]


def jordan_wigner(n: int) -> GeneratorRep:
    """Jordan-Wigner generators: ``c_{2k} = Z..Z X I..I`` and ``c_{2k+1} = Z..Z Y I..I``."""
    if n < 1:
        raise DomainError("Jordan-Wigner representation needs n >= 1")
    gens = []
    for k in range(n):
        zstring = (1 << k) - 1
        gens.append(PauliString(n, 1 << k, zstring))
        gens.append(PauliString(n, 1 << k, zstring | (1 << k)))
    return GeneratorRep(n, tuple(gens))


def _gf2_rank(vectors: Sequence[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank


def verify_rep(rep: GeneratorRep) -> RepReport:
    """Check Hermiticity, exact anticommutation and GF(2) independence."""
    for mu, g in enumerate(rep.generators):
        if not g.is_hermitian():
            return RepReport(False, f"generator {mu} is not Hermitian", (mu, mu))
        sq = pauli_mul(g, g)
        if not (sq.is_identity() and sq.phase == 0):
            return RepReport(False, f"generator {mu} does not square to identity", (mu, mu))
    gens = rep.generators
    for mu in range(len(gens)):
        for nu in range(mu + 1, len(gens)):
            ab = pauli_mul(gens[mu], gens[nu])
            ba = pauli_mul(gens[nu], gens[mu])
            if not (ab.x == ba.x and ab.z == ba.z and (ab.phase - ba.phase) % 4 == 2):
                return RepReport(False, f"generators {mu} and {nu} do not anticommute", (mu, nu))
    if _gf2_rank([g.symplectic_vector() for g in gens]) != len(gens):
        return RepReport(False, "generator bit vectors are linearly dependent over GF(2)")
    return RepReport(True)


def _check_indices(rep: GeneratorRep, indices: Sequence[int]) -> None:
    for i in indices:
        if not 0 <= i < 2 * rep.n:
            raise DomainError(f"generator index {i} out of range [0, {2 * rep.n})")


def monomial_expectation(rep: GeneratorRep, indices: Sequence[int], s: ProductState) -> complex:
    """``<s| c_{i_1} ... c_{i_d} |s>``; repeats are allowed and the empty tuple gives 1."""
    if s.n != rep.n:
        raise DimensionError(f"state on {s.n} lines, representation on {rep.n}")
    return pauli_expectation(rep.monomial(indices), s)


def decompose_pauli(rep: GeneratorRep, target: PauliString) -> MonomialDecomposition:
    """Express ``target`` as a phase times an ascending generator monomial.

    The index set is the unique GF(2) solution of ``sum_mu v_mu = v_target`` over
    the symplectic vectors of the generators; the phase follows from one exact
    multiplication.
    """
    if target.n != rep.n:
        raise DimensionError(f"target on {target.n} lines, representation on {rep.n}")
    # elimination rows carry (vector, combination-mask)
    pivots: dict[int, tuple[int, int]] = {}
    for mu, g in enumerate(rep.generators):
        v, combo = g.symplectic_vector(), 1 << mu
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                pv, pc = pivots[top]
                v ^= pv
                combo ^= pc
            else:
                pivots[top] = (v, combo)
                break
    v, combo = target.symplectic_vector(), 0
    while v:
        top = v.bit_length() - 1
        if top not in pivots:
            raise MatchgateError("target outside the span of the generators; representation is invalid")
        pv, pc = pivots[top]
        v ^= pv
        combo ^= pc
    indices = tuple(mu for mu in range(2 * rep.n) if (combo >> mu) & 1)
    prod = rep.monomial(indices)
    if prod.x != target.x or prod.z != target.z:
        raise MatchgateError("internal error: GF(2) solution does not reproduce target bits")
    return MonomialDecomposition(indices, (target.phase - prod.phase) % 4)
