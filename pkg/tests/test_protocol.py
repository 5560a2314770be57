import numpy as np
import pytest
import scipy.linalg

from swapframe.basis import build_state_basis, decompose_generator
from swapframe.bounds import block_bound, single_step_bound
from swapframe.conservation import ExtensiveObservable, lift_extensive, commutator_norm
from swapframe.linalg import (
    check_density,
    dagger,
    exp_neg_i,
    partial_trace,
    swap_operator,
    tensor,
    trace_norm,
)
from swapframe.protocol import (
    ProtocolSpec,
    collision_round,
    partial_swap,
    run_protocol,
    step_channel,
    two_subsystem_step,
)
from swapframe.rand import haar_unitary, random_density, random_hermitian, rng_from_seed

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)
PLUS = np.full((2, 2), 0.5, dtype=complex)
KET0 = np.diag([1.0, 0.0]).astype(complex)

QUBIT_BASIS = build_state_basis(2)


def test_partial_swap_zero_angle():
    assert np.array_equal(partial_swap(0.0, 10, 2), np.eye(4))


def test_partial_swap_quarter_period():
    np.testing.assert_allclose(partial_swap(np.pi / 2, 1, 2), -1j * swap_operator(2), atol=1e-12)


def test_partial_swap_unitary_and_matches_expm():
    rng = rng_from_seed(50)
    for d in (2, 3):
        s = swap_operator(d)
        for _ in range(5):
            alpha = float(rng.uniform(-4, 4))
            v = partial_swap(alpha, 13, d)
            np.testing.assert_allclose(v @ dagger(v), np.eye(d * d), atol=1e-12)
            np.testing.assert_allclose(v, scipy.linalg.expm(-1j * (alpha / 13) * s), atol=1e-12)


def test_step_channel_zero_angle_passthrough():
    rho = random_density(2, rng_from_seed(51))
    out, frame = step_channel(rho, KET0, 0.0, 5)
    np.testing.assert_allclose(out, rho, atol=1e-14)
    np.testing.assert_allclose(frame, KET0, atol=1e-14)


def test_step_channel_fixed_point():
    # |00> is a swap eigenvector, so matching pure states are exactly preserved
    out, frame = step_channel(KET0, KET0, 1.7, 3)
    np.testing.assert_allclose(out, KET0, atol=1e-12)
    np.testing.assert_allclose(frame, KET0, atol=1e-12)


def test_step_channel_outputs_valid_densities():
    rng = rng_from_seed(52)
    for _ in range(20):
        out, frame = step_channel(
            random_density(2, rng), random_density(2, rng), float(rng.uniform(-2, 2)), 4
        )
        check_density(out)
        check_density(frame)


def test_step_channel_extensivity():
    rng = rng_from_seed(53)
    for _ in range(20):
        rho = random_density(2, rng)
        sigma = random_density(2, rng)
        a = random_hermitian(2, rng)
        out, frame = step_channel(rho, sigma, 1.2, 7)
        before = np.trace(a @ rho) + np.trace(a @ sigma)
        after = np.trace(a @ out) + np.trace(a @ frame)
        assert abs((after - before).real) <= 1e-10


def test_step_channel_error_within_bound():
    bound, valid = single_step_bound(1.0, 100)
    assert valid
    out, _ = step_channel(PLUS, KET0, 1.0, 100)
    u = exp_neg_i(KET0, 1.0 / 100)
    err = trace_norm(out - u @ PLUS @ dagger(u))
    assert 0 < err <= bound
    assert bound == pytest.approx(8 * (np.e - 2) * 1e-4)


def test_step_channel_dimension_mismatch():
    with pytest.raises(ValueError):
        step_channel(np.eye(2) / 2, np.eye(3) / 3, 1.0, 5)


def test_frame_locality_full_space_equals_sequential():
    # two collisions computed on the full 3-subsystem space agree with
    # consuming one fresh particle at a time
    rng = rng_from_seed(54)
    rho = random_density(2, rng)
    sigma = random_density(2, rng)
    alpha, n = 0.9, 2

    seq = rho
    for _ in range(n):
        seq, _ = step_channel(seq, sigma, alpha, n)

    v = partial_swap(alpha, n, 2)
    v01 = tensor(v, I2)
    s12 = tensor(I2, swap_operator(2))
    v02 = s12 @ v01 @ s12
    joint = tensor(rho, sigma, sigma)
    joint = v01 @ joint @ dagger(v01)
    joint = v02 @ joint @ dagger(v02)
    full = partial_trace(joint, [2, 2, 2], 0)

    np.testing.assert_allclose(full, seq, atol=1e-12)


def test_collision_round_all_zero_coefficients():
    from swapframe.protocol import BatteryLedger

    ledger = BatteryLedger(charges=("Z",))
    rho = random_density(2, rng_from_seed(55))
    out = collision_round(
        rho, QUBIT_BASIS, (0.0, 0.0, 0.0), 10,
        charges=(ExtensiveObservable(Z, "Z"),), ledger=ledger,
    )
    np.testing.assert_allclose(out, rho, atol=1e-14)
    assert all(e.frame_delta == pytest.approx(0.0, abs=1e-14) for e in ledger.entries)
    assert ledger.cumulative()["Z"] == pytest.approx(0.0, abs=1e-13)


def test_collision_round_single_slot_reduces_to_step():
    rho = random_density(2, rng_from_seed(56))
    out = collision_round(rho, QUBIT_BASIS, (0.0, 1.1, 0.0), 50)
    expected, _ = step_channel(rho, QUBIT_BASIS.states[1], 1.1, 50)
    np.testing.assert_allclose(out, expected, atol=1e-14)


def test_collision_round_tracks_small_rotation():
    h = (np.pi / 2) * Z
    dec = decompose_generator(h, QUBIT_BASIS)
    n = 200
    bound, valid = block_bound(QUBIT_BASIS.size, QUBIT_BASIS.alpha_max, n)
    assert valid
    rho = PLUS
    out = collision_round(rho, QUBIT_BASIS, dec.alphas, n)
    u = exp_neg_i(h, 1.0 / n)
    assert trace_norm(out - u @ rho @ dagger(u)) <= bound


def test_collision_round_coefficient_count():
    with pytest.raises(ValueError):
        collision_round(PLUS, QUBIT_BASIS, (1.0,), 10)


def test_run_protocol_identity_target():
    spec = ProtocolSpec(
        target=I2, n_rounds=5, basis=QUBIT_BASIS, rho_s=PLUS,
        charges=(ExtensiveObservable(Z, "Z"),),
    )
    result = run_protocol(spec)
    assert result.total_error <= 1e-12
    assert result.ledger.cumulative()["Z"] == pytest.approx(0.0, abs=1e-12)


def test_run_protocol_errors_shrink_and_bounded():
    target = exp_neg_i(Z, np.pi / 4)
    errors = {}
    for n in (100, 200, 400):
        spec = ProtocolSpec(target=target, n_rounds=n, basis=QUBIT_BASIS, rho_s=PLUS)
        result = run_protocol(spec)
        assert result.bound_valid
        assert result.total_error <= result.total_bound
        errors[n] = result.total_error
    assert errors[200] < errors[100]
    assert errors[400] < errors[200]


def test_run_protocol_round_error_increments_bounded():
    # error growth per round never exceeds the one-round worst case
    rng = rng_from_seed(57)
    target = haar_unitary(2, rng)
    n = 150
    spec = ProtocolSpec(target=target, n_rounds=n, basis=QUBIT_BASIS,
                        rho_s=random_density(2, rng))
    result = run_protocol(spec)
    per_round = result.total_bound / n
    errs = (0.0,) + result.round_errors
    for prev, cur in zip(errs, errs[1:]):
        assert cur <= prev + per_round + 1e-14


def test_run_protocol_ledger_closure():
    rng = rng_from_seed(58)
    charges = tuple(
        ExtensiveObservable(random_hermitian(2, rng), f"A{i}") for i in range(3)
    )
    spec = ProtocolSpec(
        target=exp_neg_i(X, 0.6), n_rounds=60, basis=QUBIT_BASIS,
        rho_s=random_density(2, rng), charges=charges,
    )
    result = run_protocol(spec)
    assert len(result.ledger.entries) == 60 * 3 * 3
    assert result.ledger.max_closure_residual() <= 1e-10


def test_run_protocol_below_threshold_flagged():
    spec = ProtocolSpec(target=exp_neg_i(Z, np.pi / 4), n_rounds=10,
                        basis=QUBIT_BASIS, rho_s=PLUS)
    result = run_protocol(spec)
    assert not result.bound_valid
    assert result.n_min == pytest.approx(4 * 3 * QUBIT_BASIS.alpha_max)


def test_run_protocol_deterministic():
    spec = ProtocolSpec(
        target=exp_neg_i(Y, 0.3), n_rounds=40, basis=QUBIT_BASIS, rho_s=PLUS,
        charges=(ExtensiveObservable(X, "X"),),
    )
    a = run_protocol(spec)
    b = run_protocol(spec)
    assert np.array_equal(a.final_state, b.final_state)
    assert a.round_errors == b.round_errors
    assert a.ledger.entries == b.ledger.entries


def test_run_protocol_debug_frame_states():
    spec = ProtocolSpec(target=exp_neg_i(Z, 0.2), n_rounds=4,
                        basis=QUBIT_BASIS, rho_s=PLUS)
    result = run_protocol(spec, keep_frame_states=True)
    assert len(result.frame_states) == 4 * 3
    for frame in result.frame_states:
        check_density(frame)
    assert run_protocol(spec).frame_states is None


def test_protocol_spec_validation():
    with pytest.raises(ValueError):
        ProtocolSpec(target=I2, n_rounds=0, basis=QUBIT_BASIS, rho_s=PLUS)
    with pytest.raises(ValueError):
        ProtocolSpec(target=np.eye(3), n_rounds=5, basis=QUBIT_BASIS, rho_s=PLUS)
    with pytest.raises(ValueError):
        ProtocolSpec(target=I2, n_rounds=5, basis=QUBIT_BASIS, rho_s=PLUS,
                     charges=(ExtensiveObservable(np.eye(3), "bad3"),))


def test_two_subsystem_step_zero_angle():
    rho = random_density(4, rng_from_seed(59))
    np.testing.assert_allclose(two_subsystem_step(rho, KET0, KET0, 0.0, 10), rho, atol=1e-14)


def _double_swap_permutation():
    # |a b c d> -> |c d a b>: simultaneous exchange of both subsystem pairs
    p = np.zeros((16, 16))
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    src = ((a * 2 + b) * 2 + c) * 2 + d
                    dst = ((c * 2 + d) * 2 + a) * 2 + b
                    p[dst, src] = 1.0
    return p


def test_two_subsystem_gate_matches_expm_of_double_swap():
    p = _double_swap_permutation()
    alpha, n = 1.0, 100
    gate = partial_swap(alpha, n, 4)
    np.testing.assert_allclose(gate, scipy.linalg.expm(-1j * (alpha / n) * p), atol=1e-12)
    np.testing.assert_allclose(p @ p, np.eye(16), atol=0)


def test_two_subsystem_step_tracks_product_generator():
    rng = rng_from_seed(60)
    sigma = (I2 + Z) / 2
    gen = tensor(sigma, sigma)
    alpha, n = 1.0, 100
    bound, valid = single_step_bound(alpha, n)
    assert valid
    u = exp_neg_i(gen, alpha / n)
    for _ in range(10):
        rho = random_density(4, rng)
        out = two_subsystem_step(rho, sigma, sigma, alpha, n)
        check_density(out)
        assert trace_norm(out - u @ rho @ dagger(u)) <= bound


def test_two_subsystem_gate_conserves_lifted_charges():
    rng = rng_from_seed(61)
    gate = partial_swap(0.8, 40, 4)
    for _ in range(10):
        a = random_hermitian(2, rng)
        assert commutator_norm(gate, lift_extensive(a, 4)) <= 1e-12


def test_two_subsystem_step_dimension_mismatch():
    with pytest.raises(ValueError):
        two_subsystem_step(np.eye(4) / 4, KET0, np.eye(3) / 3, 1.0, 10)
