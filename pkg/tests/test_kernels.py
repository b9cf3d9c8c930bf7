import itertools
import os
import subprocess
import sys

import numpy as np
import pytest

from matchgates import kernels, oracle, randomize
from matchgates.clifford_algebra import jordan_wigner
from matchgates.intertwine import conjugated_jw, example3_T
from matchgates.pauli import pauli_expectation, pauli_product

BACKENDS = sorted(kernels.BACKENDS)


def brute_monomial(rep, idx, s):
    return pauli_expectation(pauli_product([rep[i] for i in idx], rep.n), s)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("rep_name", ["jw", "ex3"])
def test_monomial_values_match_products(backend, rep_name, gen):
    n = 5
    rep = jordan_wigner(n) if rep_name == "jw" else conjugated_jw(example3_T(n))
    s = randomize.product_state(gen, n)
    idx = gen.integers(0, 2 * n, size=(50, 3))
    got = kernels.monomial_values(idx, rep, s.bloch_table(), backend)
    want = [brute_monomial(rep, row, s) for row in idx]
    assert np.abs(got - want).max() <= 1e-12


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_rotated_sum_matches_enumeration(backend, d, gen):
    n = 3
    rep = jordan_wigner(n)
    s = randomize.product_state(gen, n)
    rows = gen.standard_normal((d, 2 * n))
    rows[rows < -0.8] = 0.0  # exercise the zero-skip path
    want = 0j
    for nu in itertools.product(range(2 * n), repeat=d):
        coef = np.prod([rows[j, nu[j]] for j in range(d)])
        if coef:
            want += coef * brute_monomial(rep, nu, s)
    got = kernels.rotated_monomial_sum(rows, rep, s.bloch_table(), backend)
    assert abs(got - want) <= 1e-10


def test_empty_and_zero_rows():
    rep = jordan_wigner(2)
    bloch = randomize.product_state(randomize.rng(1), 2).bloch_table()
    for b in BACKENDS:
        assert kernels.rotated_monomial_sum(np.zeros((0, 4)), rep, bloch, b) == 1
        assert kernels.rotated_monomial_sum(np.zeros((2, 4)), rep, bloch, b) == 0


def test_backends_agree_on_large_sum(gen):
    n = 6
    rep = jordan_wigner(n)
    s = randomize.product_state(gen, n)
    rows = gen.standard_normal((4, 2 * n))
    vals = {b: kernels.rotated_monomial_sum(rows, rep, s.bloch_table(), b) for b in BACKENDS}
    ref = vals["python"]
    for v in vals.values():
        assert abs(v - ref) <= 1e-10


def test_sum_against_dense_expectation(gen):
    n = 3
    rep = jordan_wigner(n)
    s = randomize.product_state(gen, n)
    rows = gen.standard_normal((2, 2 * n))
    mats = oracle.generator_matrices(rep)
    a = sum(rows[0, i] * mats[i] for i in range(2 * n))
    b = sum(rows[1, i] * mats[i] for i in range(2 * n))
    v = oracle.from_product(s).amplitudes
    want = v.conj() @ a @ b @ v
    got = kernels.rotated_monomial_sum(rows, rep, s.bloch_table())
    assert abs(got - want) <= 1e-10


def test_pure_python_switch():
    env = dict(os.environ, MATCHGATES_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import matchgates; print(matchgates.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"


def test_default_backend_is_compiled_when_built():
    if "cython" not in kernels.BACKENDS:
        pytest.skip("compiled extension not built")
    assert kernels.BACKEND == "cython"
