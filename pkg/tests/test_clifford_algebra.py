import itertools

import numpy as np
import pytest

from matchgates import oracle, randomize
from matchgates.clifford_algebra import (
    GeneratorRep,
    decompose_pauli,
    jordan_wigner,
    monomial_expectation,
    verify_rep,
)
from matchgates.errors import DimensionError, DomainError
from matchgates.intertwine import conjugated_jw, example2_T, example3_T
from matchgates.pauli import PauliString, ProductState, pauli_expectation, pauli_mul


def P(label):
    return PauliString.from_label(label)


def test_jw_single_line():
    rep = jordan_wigner(1)
    assert rep[0] == P("X") and rep[1] == P("Y")


def test_jw_three_lines():
    rep = jordan_wigner(3)
    assert rep[4] == P("ZZX") and rep[5] == P("ZZY")
    assert rep[0] == P("XII") and rep[3] == P("ZYI")


def test_jw_rejects_zero():
    with pytest.raises(DomainError):
        jordan_wigner(0)


def test_jw_anticommutator_matrix():
    rep = jordan_wigner(4)
    mats = [g.to_matrix() for g in rep]
    for a, b in itertools.product(range(8), repeat=2):
        anti = mats[a] @ mats[b] + mats[b] @ mats[a]
        assert np.allclose(anti, 2 * np.eye(16) * (a == b), atol=0)


def test_verify_rep_pass_and_fail():
    assert verify_rep(jordan_wigner(5)).ok
    bad = GeneratorRep(1, (P("X"), P("X")))
    report = verify_rep(bad)
    assert not report.ok and report.pair == (0, 1)


def test_verify_rep_flags_non_hermitian():
    bad = GeneratorRep(1, (P("+i X"), P("Y")))
    assert not verify_rep(bad).ok


def test_verify_rep_flags_dependence():
    gens = (P("XI"), P("YI"), P("ZX"), P("ZY"))
    assert verify_rep(GeneratorRep(2, gens)).ok
    assert not verify_rep(GeneratorRep(2, (P("XI"), P("YI"), P("ZX"), P("ZX")))).ok


def test_rep_size_check():
    with pytest.raises(DimensionError):
        GeneratorRep(2, (P("XI"),))


def test_rep_json_round_trip():
    rep = conjugated_jw(example3_T(5))
    assert GeneratorRep.from_json(rep.to_json()) == rep


def test_monomial_expectation_examples():
    rep = jordan_wigner(1)
    assert monomial_expectation(rep, (0, 1), ProductState.zeros(1)) == 1j
    assert monomial_expectation(rep, (), ProductState.zeros(1)) == 1


def test_monomial_square_is_one(gen):
    rep = jordan_wigner(3)
    s = randomize.product_state(gen, 3)
    for mu in range(6):
        assert abs(monomial_expectation(rep, (mu, mu), s) - 1) < 1e-15


def test_monomial_index_range():
    with pytest.raises(DomainError):
        monomial_expectation(jordan_wigner(2), (0, 4), ProductState.zeros(2))


def test_monomial_degree4_matches_dense(gen):
    rep = jordan_wigner(4)
    for _ in range(10):
        s = randomize.product_state(gen, 4)
        idx = tuple(int(i) for i in gen.integers(0, 8, 4))
        v = oracle.from_product(s).amplitudes
        m = np.eye(16, dtype=complex)
        for i in idx:
            m = m @ rep[i].to_matrix()
        assert abs(monomial_expectation(rep, idx, s) - np.vdot(v, m @ v)) < 1e-12


def test_z_from_pair_matches_single_line(gen):
    n = 4
    rep = jordan_wigner(n)
    s = randomize.product_state(gen, n)
    for k in range(n):
        want = abs(s.factors[k, 0]) ** 2 - abs(s.factors[k, 1]) ** 2
        assert abs(-1j * monomial_expectation(rep, (2 * k, 2 * k + 1), s) - want) < 1e-12


def test_decompose_z1_in_jw():
    d = decompose_pauli(jordan_wigner(3), P("ZII"))
    assert d.indices == (0, 1) and d.coefficient == -1j


def test_decompose_example2_z():
    n = 5
    rep = conjugated_jw(example2_T(n))
    for k in range(n - 1):
        d = decompose_pauli(rep, PauliString.from_letters(n, {k: "Z"}))
        # reference form Z_k = -i c'_{2k} c'_{2k+1}, 1-indexed
        assert d.indices == (2 * k + 1, 2 * k + 2)
        assert d.coefficient == -1j


def test_decompose_example2_last_line_is_not_quadratic():
    n = 5
    d = decompose_pauli(conjugated_jw(example2_T(n)), PauliString.from_letters(n, {n - 1: "Z"}))
    assert d.degree == 2 * n - 1


def test_decompose_example3_even_line_degree_six():
    n = 5
    rep = conjugated_jw(example3_T(n))
    assert decompose_pauli(rep, PauliString.from_letters(n, {1: "Z"})).degree == 6
    assert decompose_pauli(rep, PauliString.from_letters(n, {2: "Z"})).degree == 2


def test_decompose_reconstructs_random_targets(gen):
    reps = [jordan_wigner(4), conjugated_jw(example2_T(4)), conjugated_jw(randomize.clifford_circuit(gen, 4, 30))]
    for rep in reps:
        for _ in range(40):
            t = randomize.pauli(gen, 4, hermitian=False)
            d = decompose_pauli(rep, t)
            assert rep.monomial(d.indices).times_phase(d.phase) == t
            assert list(d.indices) == sorted(set(d.indices))


def test_anticommutation_by_phase():
    rep = jordan_wigner(3)
    for a, b in itertools.combinations(range(6), 2):
        assert pauli_mul(rep[a], rep[b]) == -pauli_mul(rep[b], rep[a])
