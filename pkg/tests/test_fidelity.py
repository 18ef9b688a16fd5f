import math

import numpy as np
import pytest

from physics.dynamics import TwoQubitState, two_qubit_evolve, two_qubit_evolve_series
from physics.errors import DomainError
from physics.fidelity import (
    CLASSICAL_LIMIT,
    BehaviourClass,
    WernerParams,
    advantage_p_squared,
    asymptotic_f_avg,
    behaviour_class,
    bell_state,
    bloch_tensor,
    correlation_coefficients,
    critical_p_squared,
    f_avg,
    f_avg_closed_form,
    f_avg_series,
    n_closed_form,
    n_of_rho,
    reconstruct,
    werner_state,
)
from physics.spectral import SpectralParams, bound_state


class TestReferenceStates:
    def test_bell_state_is_perfect(self):
        assert n_of_rho(bell_state()) == pytest.approx(3.0)
        assert f_avg(bell_state()) == pytest.approx(1.0)

    def test_bell_tensor(self):
        np.testing.assert_allclose(bloch_tensor(bell_state()).matrix, np.diag([1.0, -1.0, 1.0]), atol=1e-14)

    @pytest.mark.parametrize("r", [0.0, 0.2, 1.0 / 3.0, 0.5, 1.0])
    def test_werner_state(self, r):
        assert n_of_rho(werner_state(r)) == pytest.approx(3.0 * r)
        assert f_avg(werner_state(r)) == pytest.approx(0.5 + r / 2.0)

    def test_ground_state_gives_classical_limit(self):
        ground = np.zeros((4, 4))
        ground[3, 3] = 1.0
        assert f_avg(TwoQubitState(ground)) == pytest.approx(CLASSICAL_LIMIT)

    def test_werner_params_range(self):
        with pytest.raises(DomainError):
            WernerParams(1.5)
        with pytest.raises(DomainError):
            werner_state(-0.1)

    def test_coefficients_reconstruct_state(self):
        rho = two_qubit_evolve(werner_state(0.6), 0.7 * np.exp(0.4j))
        coeffs = correlation_coefficients(rho)
        assert coeffs[0, 0] == pytest.approx(1.0)
        np.testing.assert_allclose(reconstruct(coeffs), rho.matrix, atol=1e-14)


class TestClosedForm:
    @pytest.mark.parametrize("r", [0.0, 0.3, 1.0 / 3.0, 0.5, 0.9, 1.0])
    @pytest.mark.parametrize("phase", [0.0, math.pi / 3.0, math.pi / 2.0])
    def test_matches_bloch_tensor(self, r, phase):
        rho0 = werner_state(r)
        for modulus in np.linspace(0.0, 1.0, 11):
            p = modulus * np.exp(1j * phase)
            assert n_of_rho(two_qubit_evolve(rho0, p)) == pytest.approx(n_closed_form(r, modulus), abs=1e-10)

    def test_array_input(self):
        p_abs = np.linspace(0.0, 1.0, 5)
        values = f_avg_closed_form(0.5, p_abs)
        assert values.shape == p_abs.shape
        assert values[0] == pytest.approx(CLASSICAL_LIMIT)
        assert values[-1] == pytest.approx(0.75)

    def test_rejects_modulus_above_one(self):
        with pytest.raises(DomainError):
            n_closed_form(1.0, 1.1)

    def test_series_matches_pointwise(self):
        amplitudes = [1.0, 0.9j, 0.5, 0.2 * np.exp(2.0j), 0.0]
        states = two_qubit_evolve_series(werner_state(0.8), amplitudes)
        expected = [f_avg(TwoQubitState(s)) for s in states]
        np.testing.assert_allclose(f_avg_series(states), expected, atol=1e-12)


class TestFidelityLandscape:
    @pytest.mark.parametrize("r", [0.5, 0.7])
    def test_minimum_at_critical_point(self, r):
        q = np.linspace(0.0, 1.0, 10_001)
        fid = f_avg_closed_form(r, np.sqrt(q))
        assert q[np.argmin(fid)] == pytest.approx(critical_p_squared(r), abs=1e-4)

    @pytest.mark.parametrize("r", [0.5, 0.7, 1.0])
    def test_advantage_boundary(self, r):
        q_star = advantage_p_squared(r)
        assert f_avg_closed_form(r, math.sqrt(q_star)) == pytest.approx(CLASSICAL_LIMIT, abs=1e-12)
        if q_star < 0.99:
            assert f_avg_closed_form(r, math.sqrt(q_star + 0.01)) > CLASSICAL_LIMIT
        assert f_avg_closed_form(r, math.sqrt(q_star / 2)) < CLASSICAL_LIMIT or q_star == 0.0

    @pytest.mark.parametrize("r", [0.0, 0.2, 1.0 / 3.0])
    def test_low_r_never_beats_classical(self, r):
        p_abs = np.linspace(0.0, 1.0, 1001)
        assert np.max(f_avg_closed_form(r, p_abs)) <= CLASSICAL_LIMIT + 1e-12

    def test_critical_values(self):
        assert critical_p_squared(0.5) == pytest.approx(1.0 / 3.0)
        assert advantage_p_squared(0.5) == pytest.approx(2.0 / 3.0)
        assert critical_p_squared(1.0) == 0.0

    @pytest.mark.parametrize(
        "r,expected",
        [
            (1.0, BehaviourClass.MONOTONE),
            (0.7, BehaviourClass.NON_MONOTONE),
            (0.5, BehaviourClass.NON_MONOTONE),
            (1.0 / 3.0, BehaviourClass.CLASSICAL),
            (0.2, BehaviourClass.CLASSICAL),
        ],
    )
    def test_behaviour_class(self, r, expected):
        assert behaviour_class(r) is expected


class TestAsymptoticFidelity:
    def test_classical_without_bound_state(self):
        params = SpectralParams("1", 0.3, 1.0)
        assert asymptotic_f_avg(1.0, params) == pytest.approx(CLASSICAL_LIMIT)

    def test_bound_state_preserves_advantage(self, super_ohmic):
        residue = bound_state(super_ohmic).residue
        expected = 0.5 + (2.0 * residue ** 4 + 1.0) / 6.0
        assert asymptotic_f_avg(1.0, super_ohmic) == pytest.approx(expected)
        assert asymptotic_f_avg(1.0, super_ohmic) > CLASSICAL_LIMIT


class TestWorkedFidelities:
    def test_maximally_mixed_state(self):
        mixed = werner_state(0.0)
        np.testing.assert_allclose(bloch_tensor(mixed).matrix, np.zeros((3, 3)), atol=1e-15)
        assert n_of_rho(mixed) == pytest.approx(0.0, abs=1e-15)
        assert f_avg(mixed) == pytest.approx(0.5)

    def test_werner_tensor(self):
        np.testing.assert_allclose(bloch_tensor(werner_state(0.4)).matrix, np.diag([0.4, -0.4, 0.4]), atol=1e-15)

    def test_closed_form_minimum(self):
        assert n_closed_form(0.5, math.sqrt(1.0 / 3.0)) == pytest.approx(5.0 / 6.0)
        assert n_closed_form(1.0, 1.0) == pytest.approx(3.0)
        assert critical_p_squared(1.0 / 3.0) == pytest.approx(0.5)
