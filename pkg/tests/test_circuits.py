import numpy as np
import pytest

from matchgates import randomize
from matchgates.circuits import (
    H2,
    I2,
    X2,
    Z2,
    Circuit,
    Policy,
    blocks_from_matrix,
    gate_matrix,
    make_gate,
    modified_swap,
    named_gate,
    require_valid,
    validate_circuit,
)
from matchgates.errors import DomainError, ValidationError

CZ = np.diag([1, 1, 1, -1]).astype(complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def test_gzx_is_cz_swap():
    g = make_gate(Z2, X2, (0, 1))
    assert g.allowed
    assert np.array_equal(gate_matrix(g), CZ @ SWAP)


def test_identity_gate():
    g = make_gate(I2, I2, (0, 1))
    assert g.allowed and np.array_equal(gate_matrix(g), np.eye(4))


def test_swap_is_not_allowed():
    g = make_gate(I2, X2, (0, 1))
    assert np.array_equal(gate_matrix(g), SWAP)
    assert not g.allowed and g.kind == "Gtilde"


def test_block_layout():
    a = np.array([[1, 2], [3, 4]]) / 1.0
    b = np.array([[5, 6], [7, 8]]) / 1.0
    # layout check without unitarity: assemble by hand through the blocks helper
    u = np.zeros((4, 4), dtype=complex)
    u[np.ix_([0, 3], [0, 3])] = a
    u[np.ix_([1, 2], [1, 2])] = b
    ra, rb = blocks_from_matrix(u)
    assert np.array_equal(ra, a) and np.array_equal(rb, b)


def test_ghh_acts_as_h_in_each_block():
    m = gate_matrix(make_gate(H2, H2, (0, 1)))
    assert np.allclose(m[np.ix_([0, 3], [0, 3])], H2)
    assert np.allclose(m[np.ix_([1, 2], [1, 2])], H2)
    assert np.allclose(m[np.ix_([0, 3], [1, 2])], 0)


def test_gxx_flips_00_to_11():
    m = gate_matrix(make_gate(X2, X2, (0, 1)))
    assert np.array_equal(m[:, 0], [0, 0, 0, 1])


def test_unitarity_of_gzx():
    m = gate_matrix(modified_swap(0))
    assert np.abs(m @ m.conj().T - np.eye(4)).max() <= 1e-12


def test_non_unitary_block_rejected():
    with pytest.raises(ValidationError):
        make_gate(np.eye(2) * 2, I2, (0, 1))


def test_bad_lines():
    with pytest.raises(ValidationError):
        make_gate(I2, I2, (1, 1))


def test_descending_pair_becomes_xbx():
    b = randomize.unitary(randomize.rng(1))
    g = make_gate(Z2, b, (3, 2))
    assert g.lines == (2, 3)
    assert np.allclose(g.b, X2 @ b @ X2)


def test_composition_multiplies_blocks(gen):
    for _ in range(20):
        a, b, c, d = (randomize.unitary(gen) for _ in range(4))
        g1, g2 = make_gate(a, b, (0, 1)), make_gate(c, d, (0, 1))
        assert np.abs(gate_matrix(g1) @ gate_matrix(g2) - gate_matrix(make_gate(a @ c, b @ d, (0, 1)))).max() <= 1e-10


def test_allowed_flag_invariant_under_common_phase(gen):
    for _ in range(20):
        g = randomize.allowed_gate(gen, (0, 1))
        phi = gen.uniform(0, 2 * np.pi)
        assert make_gate(np.exp(1j * phi) * g.a, np.exp(1j * phi) * g.b, (0, 1)).allowed


def test_named_gates():
    assert np.array_equal(gate_matrix(named_gate("ID", (0, 1))), np.eye(4))
    assert np.array_equal(gate_matrix(named_gate("CZ", (0, 1))), CZ)
    with pytest.raises(ValidationError):
        named_gate("FOO", (0, 1))


def test_validation_policies(gen):
    nn = randomize.nn_circuit(gen, 5, 12)
    assert validate_circuit(nn, Policy.NN_ONLY).ok
    swap = validate_circuit(Circuit(3, (named_gate("SWAP", (1, 2)),)), Policy.ANY)
    assert not swap.ok and swap.violations[0].reason == "det mismatch"
    far = Circuit(3, (randomize.allowed_gate(gen, (0, 2)),))
    assert not validate_circuit(far, Policy.NN_ONLY).ok
    assert validate_circuit(far, Policy.NN_AND_NEXT_NN).ok
    with pytest.raises(ValidationError):
        require_valid(far, Policy.NN_ONLY)


def test_circuit_bounds():
    with pytest.raises(ValidationError):
        Circuit(2, (named_gate("ID", (1, 2)),))
    with pytest.raises(DomainError):
        Circuit(0)


def test_inverse_circuit(gen):
    from matchgates import oracle

    c = randomize.nn_circuit(gen, 4, 10)
    u = oracle.circuit_unitary(c + c.inverse())
    assert np.abs(u - np.eye(16)).max() <= 1e-10
