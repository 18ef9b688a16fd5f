import numpy as np
import pytest

from conftest import partial_transpose
from physics.dynamics import (
    SingleQubitState,
    TwoQubitState,
    _windows,
    decay_profile,
    kraus_operators,
    rate_identity_deviation,
    sign_law_report,
    single_qubit_map,
    two_qubit_evolve,
    two_qubit_evolve_series,
)
from physics.errors import DomainError
from physics.fidelity import bell_state, f_avg, f_avg_series, werner_state
from physics.spectral import SpectralParams
from physics.volterra import AmplitudeTrajectory, solve_p

AMPLITUDES = [1.0, 0.8, 0.6j, 0.5 * np.exp(0.3j), 0.0]


class TestStates:
    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            SingleQubitState([[0.5, 0.1], [0.2, 0.5]])

    def test_rejects_wrong_trace(self):
        with pytest.raises(DomainError):
            SingleQubitState(np.eye(2))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(DomainError):
            TwoQubitState(np.diag([1.5, -0.5, 0.0, 0.0]))

    def test_rejects_wrong_shape(self):
        with pytest.raises(DomainError):
            TwoQubitState(np.eye(2) / 2)

    def test_bell_marginals_are_mixed(self):
        bell = bell_state()
        for keep in (0, 1):
            np.testing.assert_allclose(bell.reduced(keep).matrix, np.eye(2) / 2)
        with pytest.raises(DomainError):
            bell.reduced(2)


class TestKraus:
    @pytest.mark.parametrize("p", AMPLITUDES)
    def test_completeness(self, p):
        e0, e1 = kraus_operators(p)
        total = e0.conj().T @ e0 + e1.conj().T @ e1
        np.testing.assert_allclose(total, np.eye(2), atol=1e-14)

    def test_rejects_amplitude_above_one(self):
        with pytest.raises(DomainError):
            kraus_operators(1.01)

    @pytest.mark.parametrize("p", AMPLITUDES)
    def test_single_qubit_map(self, p):
        rho0 = SingleQubitState([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
        rho = single_qubit_map(rho0, p)
        assert rho.matrix[0, 0].real == pytest.approx(0.7 * abs(p) ** 2)
        assert rho.matrix[0, 1] == pytest.approx((0.2 - 0.1j) * p)

    def test_single_qubit_map_matches_kraus(self):
        rho0 = SingleQubitState([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
        p = 0.5 * np.exp(0.3j)
        e0, e1 = kraus_operators(p)
        expected = e0 @ rho0.matrix @ e0.conj().T + e1 @ rho0.matrix @ e1.conj().T
        np.testing.assert_allclose(single_qubit_map(rho0, p).matrix, expected, atol=1e-14)


class TestTwoQubitChannel:
    @pytest.mark.parametrize("p", AMPLITUDES)
    def test_evolved_bell_state_entries(self, p):
        q = abs(p) ** 2
        rho = two_qubit_evolve(bell_state(), p).matrix
        assert rho[0, 0].real == pytest.approx(q ** 2 / 2)
        assert rho[1, 1].real == pytest.approx(q * (1 - q) / 2)
        assert rho[3, 3].real == pytest.approx(0.5 + (1 - q) ** 2 / 2)
        assert rho[0, 3] == pytest.approx(p ** 2 / 2)

    @pytest.mark.parametrize("r", [0.0, 0.2, 0.5, 1.0])
    @pytest.mark.parametrize("p", AMPLITUDES)
    def test_output_is_a_state(self, r, p):
        rho = two_qubit_evolve(werner_state(r), p)
        assert np.trace(rho.matrix).real == pytest.approx(1.0)
        assert rho.min_eigenvalue >= -1e-12

    def test_marginals_follow_single_qubit_map(self):
        p = 0.7 * np.exp(1.1j)
        rho0 = werner_state(0.6)
        rho = two_qubit_evolve(rho0, p)
        for keep in (0, 1):
            expected = single_qubit_map(rho0.reduced(keep), p)
            np.testing.assert_allclose(rho.reduced(keep).matrix, expected.matrix, atol=1e-14)

    def test_identity_at_unit_amplitude(self):
        rho0 = werner_state(0.4)
        np.testing.assert_allclose(two_qubit_evolve(rho0, 1.0).matrix, rho0.matrix, atol=1e-14)

    def test_series_matches_pointwise(self):
        rho0 = werner_state(0.7)
        series = two_qubit_evolve_series(rho0, AMPLITUDES)
        assert series.shape == (len(AMPLITUDES), 4, 4)
        for k, p in enumerate(AMPLITUDES):
            np.testing.assert_allclose(series[k], two_qubit_evolve(rho0, p).matrix, atol=1e-14)

    def test_series_rejects_amplitude_above_one(self):
        with pytest.raises(DomainError):
            two_qubit_evolve_series(bell_state(), [0.5, 1.2])

    def test_teleportation_advantage_requires_entanglement(self):
        # separable states never beat the classical 2/3
        entangled = two_qubit_evolve(werner_state(1.0), 0.8)
        assert np.linalg.eigvalsh(partial_transpose(entangled.matrix)).min() < 0
        assert f_avg(entangled) > 2.0 / 3.0

        separable = werner_state(0.2)
        assert np.linalg.eigvalsh(partial_transpose(separable.matrix)).min() >= -1e-12
        assert f_avg(separable) <= 2.0 / 3.0 + 1e-12


class TestDecayProfile:
    def test_exponential_decay_has_constant_rate(self):
        times = np.arange(0.0, 5.0, 0.01)
        values = np.exp(-1j * times - 0.15 * times)
        traj = AmplitudeTrajectory(0.01, times, values, SpectralParams("1", 0.3, 1.0))
        profile = decay_profile(traj)
        np.testing.assert_allclose(profile.gamma_raw, 0.3, rtol=1e-3)
        np.testing.assert_allclose(profile.lamb, 2.0, rtol=1e-3)
        assert profile.defined.all()

    def test_normalized_peak_is_exactly_one(self, super_ohmic):
        profile = decay_profile(solve_p(super_ohmic, t_max=20.0, dt=0.005))
        assert np.nanmax(profile.gamma_norm) == 1.0
        assert profile.gamma_max > 0

    def test_super_ohmic_rate_changes_sign(self, super_ohmic):
        profile = decay_profile(solve_p(super_ohmic, t_max=20.0, dt=0.005))
        assert np.nanmin(profile.gamma_norm) < 0.0

    def test_masks_vanishing_amplitude(self):
        times = np.arange(0.0, 1.0, 0.1)
        values = np.exp(-times).astype(complex)
        values[4] = 0.0
        traj = AmplitudeTrajectory(0.1, times, values, SpectralParams("1", 0.3, 1.0))
        profile = decay_profile(traj)
        assert not profile.defined[4]
        assert np.isnan(profile.gamma_raw[4])
        assert np.isnan(profile.gamma_norm[4])

    def test_too_short(self):
        times = np.array([0.0, 0.1])
        traj = AmplitudeTrajectory(0.1, times, np.ones(2, dtype=complex), SpectralParams("1", 0.3, 1.0))
        with pytest.raises(DomainError):
            decay_profile(traj)

    @pytest.mark.parametrize("s,eta", [("3", 0.15), ("3", 0.9), ("1", 0.3), ("1/2", 0.3)])
    def test_rate_identity(self, s, eta):
        traj = solve_p(SpectralParams(s, eta, 1.0), t_max=20.0, dt=0.005)
        assert rate_identity_deviation(traj) < 1e-3


class TestSignLaw:
    def test_windows(self):
        times = np.arange(6.0)
        mask = np.array([False, True, True, False, True, True])
        assert _windows(times, mask) == ((1.0, 2.0), (4.0, 5.0))
        assert _windows(times, np.zeros(6, dtype=bool)) == ()

    def test_pure_state_fidelity_tracks_rate_sign(self, super_ohmic):
        traj = solve_p(super_ohmic, t_max=10.0, dt=0.005)
        fidelity = f_avg_series(two_qubit_evolve_series(bell_state(), traj.values))
        report = sign_law_report(traj, fidelity, expected_sign=-1, region=np.ones(len(traj), dtype=bool))
        assert report.checked > 100
        assert report.holds

    def test_wrong_sign_is_reported(self, super_ohmic):
        traj = solve_p(super_ohmic, t_max=10.0, dt=0.005)
        fidelity = f_avg_series(two_qubit_evolve_series(bell_state(), traj.values))
        report = sign_law_report(traj, fidelity, expected_sign=+1, region=np.ones(len(traj), dtype=bool))
        assert report.violations == report.checked
        assert not report.holds


class TestWorkedStates:
    def test_plus_state_at_half_amplitude(self):
        rho = single_qubit_map(SingleQubitState(np.full((2, 2), 0.5)), 0.5).matrix
        assert rho[0, 0].real == pytest.approx(0.125)
        assert rho[0, 1] == pytest.approx(0.25)
        assert rho[1, 1].real == pytest.approx(0.875)

    def test_full_decay_reaches_ground_state(self):
        ground = np.zeros((4, 4))
        ground[3, 3] = 1.0
        np.testing.assert_allclose(two_qubit_evolve(werner_state(0.6), 0.0).matrix, ground, atol=1e-15)
        np.testing.assert_allclose(
            single_qubit_map(SingleQubitState(np.full((2, 2), 0.5)), 0.0).matrix, np.diag([0.0, 1.0]), atol=1e-15
        )

    def test_constant_modulus_has_no_decay(self):
        times = np.arange(0.0, 5.0, 0.01)
        traj = AmplitudeTrajectory(0.01, times, np.exp(-1j * times), SpectralParams("1", 0.3, 1.0))
        profile = decay_profile(traj)
        np.testing.assert_allclose(profile.gamma_raw, 0.0, atol=1e-6)
        np.testing.assert_allclose(profile.lamb, 2.0, rtol=1e-3)

    def test_werner_separability_boundary(self):
        pt = partial_transpose(werner_state(1.0 / 3.0).matrix)
        assert np.linalg.eigvalsh(pt).min() == pytest.approx(0.0, abs=1e-12)
