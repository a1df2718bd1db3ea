"""Gate construction, the rotation family, and strided application.

The strided apply functions are checked against the dense kron embeddings
in oracles.py, which are built independently of the package.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qsimlab import gates, statevec

I2 = np.eye(2, dtype=complex)
SX, SY, SZ = (gates.pauli(w) for w in "xyz")

angles = st.floats(min_value=-2.0 * math.pi, max_value=2.0 * math.pi,
                   allow_nan=False, allow_infinity=False)
axes = st.tuples(
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=-1.0, max_value=1.0),
).filter(lambda v: v[0] ** 2 + v[1] ** 2 + v[2] ** 2 > 1e-4)


def test_pauli_products_are_exact():
    table = {
        ("x", "x"): I2, ("y", "y"): I2, ("z", "z"): I2,
        ("x", "y"): 1j * SZ, ("y", "z"): 1j * SX, ("z", "x"): 1j * SY,
        ("y", "x"): -1j * SZ, ("z", "y"): -1j * SX, ("x", "z"): -1j * SY,
    }
    for (a, b), want in table.items():
        got = gates.pauli(a) @ gates.pauli(b)
        assert np.array_equal(got, want), f"sigma_{a} sigma_{b}"


def test_pauli_rejects_unknown_label():
    with pytest.raises(ValueError):
        gates.pauli("w")


def test_unit_axis_normalizes_and_rejects_null():
    n = gates.unit_axis(3.0, 0.0, 4.0)
    assert np.allclose(n, [0.6, 0.0, 0.8])
    with pytest.raises(ValueError):
        gates.unit_axis(0.0, 0.0, 0.0)


def test_zero_angle_rotation_is_identity():
    assert np.allclose(gates.rotation_gate((0.0, 0.0, 1.0), 0.0), I2, atol=1e-15)


def test_z_rotation_by_pi_gives_i_sigma_z():
    got = gates.rotation_gate((0.0, 0.0, 1.0), math.pi)
    assert np.allclose(got, 1j * SZ, atol=1e-12)


def test_full_turn_is_minus_identity():
    # spin-half sign flip under a 2*pi rotation
    got = gates.rotation_gate((1.0, 0.0, 0.0), 2.0 * math.pi)
    assert np.allclose(got, -I2, atol=1e-12)


def test_hadamard_squares_to_minus_identity():
    h = gates.hadamard()
    assert np.allclose(h @ h, -I2, atol=1e-12)
    assert np.allclose(np.abs(h), np.full((2, 2), 1.0 / math.sqrt(2.0)), atol=1e-12)


def test_hadamard_exchanges_z_and_x_axes():
    h = gates.hadamard()
    assert np.allclose(h @ SZ @ h.conj().T, SX, atol=1e-12)
    assert np.allclose(h @ SX @ h.conj().T, SZ, atol=1e-12)


@given(axes, angles, angles)
@settings(max_examples=60)
def test_rotation_group_law(axis, a, b):
    """Two turns about one axis compose by adding angles."""
    one = gates.compose(gates.rotation_gate(axis, a), gates.rotation_gate(axis, b))
    both = gates.rotation_gate(axis, a + b)
    assert np.allclose(one, both, atol=1e-12)


@given(axes, angles)
@settings(max_examples=60)
def test_rotations_are_unitary(axis, theta):
    u = gates.rotation_gate(axis, theta)
    assert np.allclose(u @ u.conj().T, I2, atol=1e-12)


def test_as_unitary_rejects_non_unitary():
    with pytest.raises(ValueError):
        gates.as_unitary(np.array([[1.0, 0.0], [0.0, 2.0]]))


def test_as_observable_rejects_non_hermitian():
    with pytest.raises(ValueError):
        gates.as_observable(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_evolve_quarter_turn_under_sigma_x():
    got = gates.evolve(SX, math.pi / 2.0)
    assert np.allclose(got, -1j * SX, atol=1e-12)


def test_evolve_half_turn_under_sigma_x():
    assert np.allclose(gates.evolve(SX, math.pi), -I2, atol=1e-12)


def test_evolve_time_scales_inversely_with_hbar():
    h = np.array([[1.0, 0.3], [0.3, -0.5]])
    assert np.allclose(gates.evolve(h, 0.8, hbar=2.0), gates.evolve(h, 0.4), atol=1e-12)


@given(angles)
@settings(max_examples=40)
def test_evolve_output_is_unitary(t):
    h = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, -1.1]])
    u = gates.evolve(h, t)
    assert np.allclose(u @ u.conj().T, I2, atol=1e-11)


def test_apply_single_matches_dense_embedding():
    rng = np.random.default_rng(42)
    for n in range(1, 5):
        for target in range(n):
            g = gates.rotation_gate(rng.normal(size=3), rng.uniform(-math.pi, math.pi))
            state = statevec.random_state(n, rng)
            got = gates.apply_single(state.copy(), g, target).amplitudes
            want = oracles.dense_single(g, target, n) @ state.amplitudes
            assert np.max(np.abs(got - want)) < 1e-12, (n, target)


def test_apply_controlled_matches_dense_embedding():
    rng = np.random.default_rng(43)
    for n in (2, 3, 4):
        for control in range(n):
            for target in range(n):
                if target == control:
                    continue
                g = gates.rotation_gate(rng.normal(size=3), rng.uniform(-math.pi, math.pi))
                state = statevec.random_state(n, rng)
                got = gates.apply_controlled(state.copy(), g, control, target).amplitudes
                want = oracles.dense_controlled(g, control, target, n) @ state.amplitudes
                assert np.max(np.abs(got - want)) < 1e-12, (n, control, target)


def test_cnot_flips_target_only_when_control_set():
    flip = gates.pauli("x")
    on = gates.apply_controlled(statevec.new_basis_state(2, 2), flip, 0, 1)
    assert np.allclose(on.amplitudes, [0, 0, 0, 1], atol=1e-15)  # |10> -> |11>
    off = gates.apply_controlled(statevec.new_basis_state(2, 0), flip, 0, 1)
    assert np.allclose(off.amplitudes, [1, 0, 0, 0], atol=1e-15)


def test_apply_rejects_out_of_range_target():
    state = statevec.new_basis_state(2, 0)
    with pytest.raises(ValueError):
        gates.apply_single(state, SX, 2)
    with pytest.raises(ValueError):
        gates.apply_controlled(state, SX, 0, 0)


def test_approximation_error_zero_for_identical_gates():
    u = gates.rotation_gate((0.0, 1.0, 0.0), 0.3)
    err = gates.approximation_error(u, u)
    assert err.probe_max < 1e-24
    assert err.spectral_sq < 1e-24


def test_approximation_error_known_phase_offset():
    # (I - iI) acts as (1 - i) on every state, so both figures are exactly 2
    err = gates.approximation_error(I2, 1j * I2)
    assert err.probe_max == pytest.approx(2.0, abs=1e-12)
    assert err.spectral_sq == pytest.approx(2.0, abs=1e-12)


def test_probe_maximum_never_exceeds_spectral_bound():
    rng = np.random.default_rng(5)
    for _ in range(20):
        u = gates.rotation_gate(rng.normal(size=3), rng.uniform(-math.pi, math.pi))
        v = gates.rotation_gate(rng.normal(size=3), rng.uniform(-math.pi, math.pi))
        err = gates.approximation_error(u, v)
        assert err.probe_max <= err.spectral_sq + 1e-12
