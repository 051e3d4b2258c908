import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from cavkick.errors import NonUnitaryError, NormalizationError, NotHermitianError
from cavkick.subspace import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BlochHamiltonian,
    CoupledModeSystem,
    Propagator2,
    SubspaceState,
    apply,
    bloch_propagator,
    coupled_mode_propagator,
    make_initial_state,
    matrix_exp_oracle,
    sigma_z_kick,
    unitarity_residual,
)

from conftest import azimuth, maxabs, polar, states, times

S2 = 1 / math.sqrt(2)


def taylor_expm(a, terms=60):
    """Plain scaling-and-squaring Taylor series, used only as a test oracle."""
    a = np.asarray(a, dtype=complex)
    norm = np.max(np.sum(np.abs(a), axis=0))
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    b = a / 2**s
    out = np.eye(len(a), dtype=complex)
    term = np.eye(len(a), dtype=complex)
    for k in range(1, terms):
        term = term @ b / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def test_subspace_operators_match_definitions():
    ket10, ket01 = np.array([1, 0]), np.array([0, 1])
    sx = np.outer(ket10, ket01) + np.outer(ket01, ket10)
    sy = 1j * (np.outer(ket10, ket01) - np.outer(ket01, ket10))
    sz = np.outer(ket10, ket10) - np.outer(ket01, ket01)
    assert np.array_equal(SIGMA_X, sx)
    assert np.array_equal(SIGMA_Y, sy)
    assert np.array_equal(SIGMA_Z, sz)


@pytest.mark.parametrize(
    "theta0, phi0, expected",
    [
        (0.0, 0.0, (1, 0)),
        (math.pi / 2, 0.0, (S2, S2)),
        (math.pi / 2, math.pi / 2, (S2, 1j * S2)),
    ],
)
def test_make_initial_state(theta0, phi0, expected):
    s = make_initial_state(theta0, phi0)
    assert s.amp10 == pytest.approx(expected[0], abs=1e-15)
    assert s.amp01 == pytest.approx(expected[1], abs=1e-15)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_initial_state_normalized(theta0, phi0):
    s = make_initial_state(theta0, phi0)
    assert abs(abs(s.amp10) ** 2 + abs(s.amp01) ** 2 - 1) <= 1e-12


def test_state_rejects_bad_norm():
    with pytest.raises(NormalizationError):
        SubspaceState(1, 1)


@pytest.mark.parametrize("kw", [dict(omega=-1, theta=0, phi=0), dict(omega=1, theta=4, phi=0),
                                dict(omega=1, theta=0, phi=2 * math.pi)])
def test_bloch_hamiltonian_ranges(kw):
    with pytest.raises(ValueError):
        BlochHamiltonian(**kw)


@given(st.floats(0, 100), polar, azimuth)
def test_bloch_hamiltonian_spectrum(omega, theta, phi):
    h = BlochHamiltonian(omega, theta, phi).matrix
    assert maxabs(h, h.conj().T) == 0
    assert np.allclose(np.linalg.eigvalsh(h), [-omega / 2, omega / 2], atol=1e-12 * max(1, omega))


def test_bloch_propagator_examples():
    h = BlochHamiltonian(2.0, 1.0, 0.5)
    assert maxabs(bloch_propagator(h, 0.0).m, np.eye(2)) == 0
    x_rot = bloch_propagator(BlochHamiltonian(2.0, math.pi / 2, 0.0), math.pi / 2).m
    assert maxabs(x_rot, [[0, -1j], [-1j, 0]]) <= 1e-15


def test_bloch_propagator_generic_matches_oracles():
    h = BlochHamiltonian(2.0, math.pi / 3, math.pi / 5)
    u = bloch_propagator(h, 0.7).m
    assert maxabs(u, matrix_exp_oracle(h.matrix, 0.7)) <= 1e-12
    assert maxabs(u, taylor_expm(-1j * h.matrix * 0.7)) <= 1e-12


@settings(max_examples=300)
@given(st.floats(0, 20), polar, azimuth, times)
def test_bloch_propagator_unitary_and_oracle(omega, theta, phi, t):
    h = BlochHamiltonian(omega, theta, phi)
    u = bloch_propagator(h, t).m
    assert unitarity_residual(u) <= 1e-12
    assert abs(abs(np.linalg.det(u)) - 1) <= 1e-12
    assert maxabs(u, matrix_exp_oracle(h.matrix, t)) <= 1e-10
    assert maxabs(u, scipy.linalg.expm(-1j * h.matrix * t)) <= 1e-10


@given(st.floats(0, 20), polar, azimuth, times, times)
def test_bloch_group_property(omega, theta, phi, t1, t2):
    h = BlochHamiltonian(omega, theta, phi)
    lhs = bloch_propagator(h, t1).m @ bloch_propagator(h, t2).m
    assert maxabs(lhs, bloch_propagator(h, t1 + t2).m) <= 1e-11


@given(st.floats(0.01, 10), azimuth, times)
def test_equatorial_reversal(omega, phi, t):
    h = BlochHamiltonian(omega, math.pi / 2, phi)
    lhs = SIGMA_Z @ bloch_propagator(h, t).m @ SIGMA_Z
    assert maxabs(lhs, bloch_propagator(h, -t).m) <= 1e-12


@given(st.floats(0.1, 5), st.floats(0.1, 3))
def test_polar_axis_does_not_reverse(omega, t):
    wt = omega * t
    if abs(math.sin(wt)) < 1e-3:
        return
    h = BlochHamiltonian(omega, 0.0, 0.0)
    resid = maxabs(SIGMA_Z @ bloch_propagator(h, t).m @ SIGMA_Z, bloch_propagator(h, -t).m)
    assert resid >= abs(math.sin(wt)) - 1e-12


def test_coupled_mode_examples():
    g = 7.0
    quarter = coupled_mode_propagator(CoupledModeSystem(g), math.pi / (2 * g)).m
    assert maxabs(quarter, -1j * SIGMA_X) <= 1e-15
    half = coupled_mode_propagator(CoupledModeSystem(g), math.pi / g).m
    assert maxabs(half, -np.eye(2)) <= 1e-15
    u = coupled_mode_propagator(CoupledModeSystem(1e3), 3e-4).m
    # cos 0.3 and sin 0.3 from mpmath at 30 digits
    c, s = 0.955336489125606019642310227568, 0.295520206661339575105320745685
    assert maxabs(u, [[c, -1j * s], [-1j * s, c]]) <= 1e-15
    assert maxabs(u, matrix_exp_oracle(1e3 * SIGMA_X, 3e-4)) <= 1e-12


@given(st.floats(1e-3, 1e4), st.floats(-1e-1, 1e-1))
def test_coupled_mode_is_equatorial_bloch(g, t):
    a = coupled_mode_propagator(CoupledModeSystem(g), t).m
    b = bloch_propagator(BlochHamiltonian(2 * g, math.pi / 2, 0.0), t).m
    assert maxabs(a, b) <= 1e-14


def test_coupled_mode_optional_phase():
    sys = CoupledModeSystem(g=2.0, omega=5.0)
    t = 0.3
    with_phase = coupled_mode_propagator(sys, t, include_mode_phase=True).m
    h = np.array([[5.0, 2.0], [2.0, 5.0]])
    assert maxabs(with_phase, matrix_exp_oracle(h, t)) <= 1e-12


def test_coupled_mode_requires_positive_g():
    with pytest.raises(ValueError):
        CoupledModeSystem(0.0)


def test_sigma_z_kick():
    kick = sigma_z_kick()
    assert apply(kick, SubspaceState(1, 0)).vector.tolist() == [1, 0]
    assert apply(kick, SubspaceState(0, 1)).vector.tolist() == [0, -1]
    assert np.array_equal((kick @ kick).m, np.eye(2))


def test_apply_examples():
    s = make_initial_state(1.1, 0.4)
    assert maxabs(apply(np.eye(2), s).vector, s.vector) == 0
    swapped = apply(coupled_mode_propagator(CoupledModeSystem(1.0), math.pi / 2), SubspaceState(1, 0))
    assert maxabs(swapped.vector, [0, -1j]) <= 1e-15
    flipped = apply(sigma_z_kick(), SubspaceState(S2, S2))
    assert maxabs(flipped.vector, [S2, -S2]) == 0


def test_apply_rejects_non_unitary():
    with pytest.raises(NonUnitaryError):
        apply(np.array([[1, 0], [0, 1.01]]), SubspaceState(1, 0))
    with pytest.raises(NonUnitaryError):
        Propagator2(np.ones((2, 2)))


@given(states(), st.floats(0, 20), polar, azimuth, times)
def test_apply_preserves_norm(s, omega, theta, phi, t):
    out = apply(bloch_propagator(BlochHamiltonian(omega, theta, phi), t), s)
    assert abs(np.linalg.norm(out.vector) - 1) <= 1e-12


def test_oracle_examples():
    assert maxabs(matrix_exp_oracle(np.zeros((2, 2)), 3.3), np.eye(2)) == 0
    assert maxabs(matrix_exp_oracle(SIGMA_Z, math.pi), -np.eye(2)) <= 1e-15
    u = matrix_exp_oracle(SIGMA_X, math.pi / 2)  # (omega/2) sigma_x with omega = 2
    assert maxabs(u, bloch_propagator(BlochHamiltonian(2.0, math.pi / 2, 0.0), math.pi / 2).m) <= 1e-15


def test_oracle_three_by_three_against_scipy(rng):
    for _ in range(50):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        h = a + a.conj().T
        t = rng.uniform(-3, 3)
        assert maxabs(matrix_exp_oracle(h, t), scipy.linalg.expm(-1j * h * t)) <= 1e-12


def test_oracle_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        matrix_exp_oracle(np.array([[0, 1], [0, 0]]), 1.0)
