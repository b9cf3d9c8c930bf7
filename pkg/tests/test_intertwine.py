import itertools

import numpy as np
import pytest

from matchgates import oracle, randomize
from matchgates.circuits import gate_matrix
from matchgates.clifford_algebra import decompose_pauli, jordan_wigner, verify_rep
from matchgates.errors import DomainError, ValidationError
from matchgates.gaussian import circuit_to_rotation, expectation_z
from matchgates.intertwine import (
    CliffordCircuit,
    cnot,
    conjugate_pauli,
    conjugate_rep,
    conjugated_gate,
    conjugated_jw,
    example1_T,
    example2_T,
    example3_T,
    golden_surviving_terms,
    one,
    simulate_intertwined,
    surviving_quadratic_terms,
)
from matchgates.pauli import PauliString, commutes, pauli_mul


def P(label):
    return PauliString.from_label(label)


def Z(n, k):
    return PauliString.from_letters(n, {k: "Z"})


def test_hadamard_exchanges_x_and_z():
    t = CliffordCircuit(1, (one("H", 0),))
    assert conjugate_pauli(t, P("X")) == P("Z")
    assert conjugate_pauli(t, P("Z")) == P("X")
    assert conjugate_pauli(t, P("Y")) == P("-1 Y")


def test_cnot_spreads_x_of_control():
    t = CliffordCircuit(2, (cnot(0, 1),))
    assert conjugate_pauli(t, P("XI")) == P("XX")
    assert conjugate_pauli(t, P("IZ")) == P("ZZ")


def test_random_clifford_matches_dense(gen):
    for _ in range(40):
        t = randomize.clifford_circuit(gen, 5, 25)
        p = randomize.pauli(gen, 5, hermitian=False)
        dense = oracle.conjugate_dense(t.unitary(), p)
        assert oracle.pauli_from_matrix(dense, tol=1e-10) == conjugate_pauli(t, p)


def test_identity_circuit_keeps_rep():
    assert conjugate_rep(CliffordCircuit(4), jordan_wigner(4)) == jordan_wigner(4)


def test_conjugated_reps_stay_valid(gen):
    for _ in range(10):
        t = randomize.clifford_circuit(gen, 4, 30)
        assert verify_rep(conjugated_jw(t)).ok


EXAMPLE2_N4 = ["+1 ZZZZ", "-1 YZZZ", "+1 XZZZ", "-1 IYZZ", "+1 IXZZ", "-1 IIYZ", "+1 IIXZ", "-1 IIIY"]


def test_example2_table_n4():
    rep = conjugated_jw(example2_T(4))
    assert [str(g) for g in rep] == EXAMPLE2_N4


def test_example2_formula_all_n():
    for n in range(4, 9):
        rep = conjugated_jw(example2_T(n))
        for k in range(n):
            odd = {j: "Z" for j in range(k, n)}
            if k:
                odd[k - 1] = "X"
            even = {j: "Z" for j in range(k + 1, n)}
            even[k] = "Y"
            assert rep[2 * k] == PauliString.from_letters(n, odd)
            assert rep[2 * k + 1] == PauliString.from_letters(n, even, phase=2)


def test_example2_hamiltonian_dictionary():
    n = 6
    t = example2_T(n)

    def L(d, ph=0):
        return PauliString.from_letters(n, d, ph)

    for k in range(1, n - 1):
        jw_terms = {
            "alpha0": L({k: "Y", k + 1: "Y"}),
            "alpha1": L({k: "X", k + 1: "X"}),
            "beta1": L({k: "Y", k + 1: "X"}),
            "beta2": L({k: "X", k + 1: "Y"}),
            "gamma1": L({k: "Z"}),
            "gamma2": L({k + 1: "Z"}),
        }
        printed = {
            "alpha0": L({k - 1: "X", k: "Z", k + 1: "X"}, 2),
            "beta1": L({k - 1: "X", k: "Y"}, 2),
            "beta2": L({k: "Y", k + 1: "X"}, 2),
            "gamma1": L({k - 1: "X", k: "X"}),
            "gamma2": L({k: "X", k + 1: "X"}),
            "alpha1": L({k: "Z"}),
        }
        for name, term in jw_terms.items():
            assert conjugate_pauli(t, term) == printed[name], (k, name)


def test_example2_jw_side_of_dictionary():
    jw = jordan_wigner(2)
    # i(alpha0 c1 c4 - alpha1 c2 c3 + beta1 c1 c3 - beta2 c2 c4 - gamma1 c1 c2 - gamma2 c3 c4), 1-indexed
    table = {(0, 3, 1): "YY", (1, 2, -1): "XX", (0, 2, 1): "YX", (1, 3, -1): "XY", (0, 1, -1): "ZI", (2, 3, -1): "IZ"}
    for (a, b, sign), label in table.items():
        m = 1j * sign * jw[a].to_matrix() @ jw[b].to_matrix()
        assert np.array_equal(m, P(label).to_matrix())


def test_example3_boundary_generators():
    for n in (5, 7, 9):
        rep = conjugated_jw(example3_T(n))
        pad = "I" * (n - 2)
        assert [str(g) for g in rep.generators[:3]] == [f"+1 XX{pad}", f"+1 YX{pad}", f"+1 ZX{pad}"]


def test_example3_bulk_generators_n7():
    rep = conjugated_jw(example3_T(7))
    # 1-indexed labels c'_4 .. c'_11
    assert str(rep[3]) == "+1 IYZIIII"
    assert str(rep[5]) == "+1 IYXXIII"
    assert str(rep[6]) == "+1 IZIXIII"
    assert str(rep[7]) == "+1 IZZYZII"
    assert str(rep[9]) == "+1 IZZYXXI"
    assert str(rep[10]) == "+1 IZZZIXI"


def test_example3_4l_plus_1_sign_against_dense():
    # the reference table gives a + sign; direct T^dagger c T gives the opposite sign
    n = 5
    t = example3_T(n)
    c5 = jordan_wigner(n)[4]
    dense = oracle.conjugate_dense(t.unitary(), c5)
    printed = P("+1 IYYXI").to_matrix()
    assert np.array_equal(dense, -printed)
    assert conjugated_jw(t)[4] == P("-1 IYYXI")


def test_example3_degree_rule():
    for n in (5, 7, 9):
        rep = conjugated_jw(example3_T(n))
        for k in range(n):
            want = 2 if k % 2 == 0 else 6
            assert decompose_pauli(rep, Z(n, k)).degree == want


def test_example2_z_degree():
    for n in range(4, 9):
        rep = conjugated_jw(example2_T(n))
        degrees = [decompose_pauli(rep, Z(n, k)).degree for k in range(n)]
        assert degrees[:-1] == [2] * (n - 1)
        assert degrees[-1] == 2 * n - 1


def test_example1_swap_relabels_lines():
    n = 4
    t = example1_T(n, [(1, 2)])
    rep = conjugated_jw(t)
    perm = [0, 2, 1, 3]
    for g, g0 in zip(rep, jordan_wigner(n)):
        assert g == g0.permute_lines(perm)


def test_example_constructor_errors():
    with pytest.raises(DomainError):
        example3_T(6)
    with pytest.raises(DomainError):
        example3_T(1)
    with pytest.raises(ValidationError):
        cnot(1, 1)
    with pytest.raises(ValidationError):
        CliffordCircuit(2, (one("H", 2),))
    with pytest.raises(ValidationError):
        one("T", 0)


def test_clifford_json_round_trip(gen):
    t = randomize.clifford_circuit(gen, 4, 15)
    assert CliffordCircuit.from_json(t.to_json()) == t
    with pytest.raises(ValidationError):
        CliffordCircuit.from_json({"n": 2, "ops": [{"g": "CNOT", "c": 0}]})


def test_conjugated_gate_identity(gen):
    g = randomize.allowed_gate(gen, (1, 2))
    cg = conjugated_gate(CliffordCircuit(4), g)
    assert cg.support == (1, 2)
    assert np.abs(cg.matrix - gate_matrix(g)).max() <= 1e-12


def test_example2_gates_are_three_local(gen):
    n = 6
    t = example2_T(n)
    for k in range(1, n - 1):
        cg = conjugated_gate(t, randomize.allowed_gate(gen, (k, k + 1)))
        assert set(cg.support) <= {k - 1, k, k + 1}


def test_example3_gates_are_four_local(gen):
    n = 7
    t = example3_T(n)
    for k in range(n - 1):
        cg = conjugated_gate(t, randomize.allowed_gate(gen, (k, k + 1)))
        assert cg.locality <= 4
        assert set(cg.support) <= {k - 1, k, k + 1, k + 2}


def test_example3_gate_window_reference(gen):
    # reference window: a gate on lines (k, k+1) stays inside k .. k+3
    n = 7
    k = 2
    cg = conjugated_gate(example3_T(n), randomize.allowed_gate(gen, (k, k + 1)))
    assert set(cg.support) <= {k, k + 1, k + 2, k + 3}


def test_restriction_reproduces_gate(gen):
    n = 5
    t = example3_T(n)
    g = randomize.allowed_gate(gen, (2, 3))
    cg = conjugated_gate(t, g)
    tu = t.unitary()
    want = tu.conj().T @ oracle.embed(gate_matrix(g), g.lines, n) @ tu
    assert np.abs(oracle.embed(cg.matrix, cg.support, n) - want).max() <= 1e-10


def test_identity_clifford_reduces_to_expectation_z(gen):
    n = 4
    c = randomize.nn_circuit(gen, n, 15)
    s = randomize.product_state(gen, n)
    for k in range(n):
        got = simulate_intertwined(CliffordCircuit(n), c, s, Z(n, k))
        assert abs(got - expectation_z(c, s, k).value) <= 1e-12


def _dense_intertwined(t, base, s, target):
    tu = t.unitary()
    v = tu.conj().T @ oracle.circuit_unitary(base) @ tu @ oracle.from_product(s).amplitudes
    return oracle.expectation_pauli_dense(oracle.StateVector(t.n, v), target)


def test_example2_simulation(gen):
    n = 5
    t = example2_T(n)
    for _ in range(6):
        base = randomize.nn_circuit(gen, n, 20)
        s = randomize.product_state(gen, n)
        k = int(gen.integers(0, n - 1))
        assert abs(simulate_intertwined(t, base, s, Z(n, k)) - _dense_intertwined(t, base, s, Z(n, k))) <= 1e-9


def test_example3_simulation_degree_six(gen):
    n = 5
    t = example3_T(n)
    for k in (1, 3):
        base = randomize.nn_circuit(gen, n, 20)
        s = randomize.product_state(gen, n)
        got = simulate_intertwined(t, base, s, Z(n, k), degree_cap=6)
        assert abs(got - _dense_intertwined(t, base, s, Z(n, k))) <= 1e-7


def test_rotation_unchanged_by_conjugation(gen):
    n = 5
    t = example3_T(n)
    base = randomize.nn_circuit(gen, n, 15)
    tu = t.unitary()
    conj = tu.conj().T @ oracle.circuit_unitary(base) @ tu
    r, resid = oracle.dense_rotation(conj, conjugated_jw(t))
    assert resid <= 1e-9
    assert np.abs(r - circuit_to_rotation(base).r).max() <= 1e-9


def test_surviving_terms_match_golden_file():
    golden = golden_surviving_terms()
    t = example3_T(golden["n"])
    for w in golden["windows"]:
        got = surviving_quadratic_terms(t, w["lines"])
        assert [list(p) for p in got] == w["pairs"]
        assert len(got) == w["count"]


def test_bulk_windows_have_thirteen_terms():
    n = 9
    t = example3_T(n)
    counts = [len(surviving_quadratic_terms(t, range(k, k + 4))) for k in range(n - 3)]
    assert counts[1:-1] == [13] * (n - 5)


def _closure(gens):
    seen = {(g.x, g.z) for g in gens}
    items = list(gens)
    grew = True
    while grew:
        grew = False
        for a, b in itertools.product(list(items), repeat=2):
            if not commutes(a, b):
                c = pauli_mul(a, b).without_phase()
                if (c.x, c.z) not in seen:
                    seen.add((c.x, c.z))
                    items.append(c)
                    grew = True
    return seen


def test_listed_hamiltonians_generate_the_surviving_terms():
    n = 9
    t = example3_T(n)
    rep = conjugated_jw(t)
    for k1 in range(2, 6):  # 1-indexed window start of the reference list
        k = k1 - 1

        def L(d):
            return PauliString.from_letters(n, {k + off: c for off, c in d.items()})

        if k1 % 2:
            listed = [{0: "Z", 1: "Z", 2: "X", 3: "X"}, {0: "Z", 1: "Z", 2: "Z"}, {1: "X", 2: "Z", 3: "X"}, {0: "X", 1: "X"},
                      {1: "X", 2: "X"}, {2: "X", 3: "X"}, {0: "Z"}, {2: "Z"}]
        else:
            listed = [{0: "X", 1: "X", 2: "Z", 3: "Z"}, {1: "Z", 2: "Z", 3: "Z"}, {0: "X", 1: "Z", 2: "X"}, {0: "X", 1: "X"},
                      {1: "X", 2: "X"}, {2: "X", 3: "X"}, {1: "Z"}, {3: "Z"}]
        span = _closure([L(d) for d in listed])
        survivors = {(pauli_mul(rep[a], rep[b]).x, pauli_mul(rep[a], rep[b]).z) for a, b in surviving_quadratic_terms(t, range(k, k + 4))}
        assert span == survivors
