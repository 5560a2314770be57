import numpy as np
import pytest

from swapframe.basis import (
    DegenerateBasisError,
    OperatorBasis,
    alpha_max_bound,
    basis_from_states,
    build_state_basis,
    decompose_generator,
    dual_basis,
    gell_mann_generators,
)
from swapframe.linalg import check_density, operator_norm
from swapframe.rand import random_bounded_generator, rng_from_seed

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)


def test_gell_mann_generators_orthogonality():
    for d in (2, 3, 4):
        gens = gell_mann_generators(d)
        assert len(gens) == d * d - 1
        for i, g in enumerate(gens):
            assert abs(np.trace(g)) < 1e-14
            np.testing.assert_allclose(g, g.conj().T, atol=1e-14)
            for j, h in enumerate(gens):
                expected = 2.0 if i == j else 0.0
                assert np.trace(g @ h).real == pytest.approx(expected, abs=1e-12)


def test_qubit_basis_is_pure_pauli_states():
    basis = build_state_basis(2)
    assert basis.size == 3
    for sigma, pauli in zip(basis.states, (X, Y, Z)):
        np.testing.assert_allclose(sigma, (I2 + pauli) / 2, atol=1e-12)
        check_density(sigma)
        # purity -> rank one
        assert np.trace(sigma @ sigma).real == pytest.approx(1.0, abs=1e-12)


def test_qubit_duals_hand_computed():
    basis = build_state_basis(2)
    np.testing.assert_allclose(basis.duals[0], (I2 - X - Y - Z) / 2, atol=1e-10)
    for dual, pauli in zip(basis.duals[1:], (X, Y, Z)):
        np.testing.assert_allclose(dual, pauli, atol=1e-10)


@pytest.mark.parametrize("d", [2, 3])
def test_duality_relations(d):
    basis = build_state_basis(d)
    elements = [np.eye(d, dtype=complex)] + list(basis.states)
    for k, e in enumerate(elements):
        for l, dual in enumerate(basis.duals):
            expected = 1.0 if k == l else 0.0
            assert np.trace(e @ dual).real == pytest.approx(expected, abs=1e-10)


def test_qutrit_basis_valid_and_independent():
    basis = build_state_basis(3)
    assert basis.size == 8
    for sigma in basis.states:
        check_density(sigma)
    elements = [np.eye(3, dtype=complex)] + list(basis.states)
    gram = np.array([[np.trace(a @ b).real for b in elements] for a in elements])
    assert np.linalg.matrix_rank(gram) == 9
    assert np.isfinite(np.linalg.cond(gram))


def test_dual_basis_orthonormal_self_dual():
    elements = [I2 / np.sqrt(2), X / np.sqrt(2), Y / np.sqrt(2), Z / np.sqrt(2)]
    duals = dual_basis(elements)
    for e, t in zip(elements, duals):
        np.testing.assert_allclose(t, e, atol=1e-12)


def test_dual_basis_rejects_duplicates():
    with pytest.raises(DegenerateBasisError):
        dual_basis([I2, X, X, Z])


def test_decompose_zero_generator():
    basis = build_state_basis(2)
    dec = decompose_generator(np.zeros((2, 2)), basis)
    assert dec.alphas == (0.0, 0.0, 0.0)
    assert dec.identity_coefficient == 0.0
    assert dec.residual < 1e-12


def test_decompose_z_rotation():
    # tr((pi/2) Z · P_k) gives (0, 0, pi); identity part is -pi/2
    basis = build_state_basis(2)
    dec = decompose_generator((np.pi / 2) * Z, basis)
    np.testing.assert_allclose(dec.alphas, (0.0, 0.0, np.pi), atol=1e-12)
    assert dec.identity_coefficient == pytest.approx(-np.pi / 2, abs=1e-12)
    assert dec.residual < 1e-9


def test_decompose_basis_state_multiple():
    basis = build_state_basis(2)
    dec = decompose_generator(np.pi * (I2 + X) / 2, basis)
    np.testing.assert_allclose(dec.alphas, (np.pi, 0.0, 0.0), atol=1e-12)
    assert dec.identity_coefficient == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_reconstruction_of_random_generators(d):
    basis = build_state_basis(d)
    rng = rng_from_seed(20 + d)
    eye = np.eye(d)
    for _ in range(100):
        h = random_bounded_generator(d, rng)
        dec = decompose_generator(h, basis)
        recon = dec.identity_coefficient * eye + sum(
            a * s for a, s in zip(dec.alphas, basis.states)
        )
        assert operator_norm(h - recon) < 1e-9
        assert dec.residual < 1e-9


def test_alpha_max_qubit_value():
    basis = build_state_basis(2)
    assert basis.alpha_max == pytest.approx(np.pi * np.sqrt(6.0), abs=1e-9)
    assert alpha_max_bound(basis) == pytest.approx(basis.alpha_max)


def test_alpha_max_unit_norm_duals():
    # duals of unit Hilbert-Schmidt norm and three generators give sqrt(3)*pi
    unit_duals = (I2 / np.sqrt(2), X / np.sqrt(2), Y / np.sqrt(2), Z / np.sqrt(2))
    basis = OperatorBasis(dim=2, states=unit_duals[1:], duals=unit_duals, alpha_max=0.0)
    assert alpha_max_bound(basis) == pytest.approx(np.pi * np.sqrt(3.0))


@pytest.mark.parametrize("d", [2, 3])
def test_alpha_bound_holds_for_random_generators(d):
    basis = build_state_basis(d)
    rng = rng_from_seed(30 + d)
    for _ in range(200):
        dec = decompose_generator(random_bounded_generator(d, rng), basis)
        assert dec.max_alpha <= basis.alpha_max + 1e-12


def test_json_roundtrip_bit_exact():
    basis = build_state_basis(3)
    restored = OperatorBasis.from_json(basis.to_json())
    assert restored.dim == basis.dim
    for a, b in zip(basis.states, restored.states):
        assert np.array_equal(a, b)
    for a, b in zip(basis.duals, restored.duals):
        assert np.array_equal(a, b)
    assert restored.alpha_max == basis.alpha_max


def test_basis_from_states_validates():
    with pytest.raises(ValueError):
        basis_from_states(2, [I2 / 2, I2 / 2])  # wrong count
    with pytest.raises(ValueError):
        basis_from_states(2, [np.diag([2.0, -1.0])] * 3)  # not density operators
    with pytest.raises(DegenerateBasisError):
        basis_from_states(2, [(I2 + X) / 2, (I2 + X) / 2, (I2 + Z) / 2])
