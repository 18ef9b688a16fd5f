"""
Single- and two-qubit channel states driven by the amplitude p(t), and the
time-dependent decay rate / Lamb shift extracted from a trajectory.

Matrices use the basis {|1>, |0>} for one qubit and
{|11>, |10>, |01>, |00>} for two qubits; every reported quantity is
invariant under reordering of the basis.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from core.logger import get_solver_logger
from .errors import DomainError
from .volterra import AmplitudeTrajectory

logger = get_solver_logger()

P_TOLERANCE = 1e-9
PSD_TOLERANCE = -1e-12
HERMITIAN_TOLERANCE = 1e-10
EPS_P = 1e-12


def _check_density_matrix(rho: np.ndarray, dim: int, name: str) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise DomainError(f"{name} must be a {dim}x{dim} matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=HERMITIAN_TOLERANCE):
        raise DomainError(f"{name} is not Hermitian")
    if abs(np.trace(rho) - 1.0) > 1e-9:
        raise DomainError(f"{name} must have unit trace")
    if np.linalg.eigvalsh(rho).min() < PSD_TOLERANCE:
        raise DomainError(f"{name} is not positive semidefinite")
    return rho


class SingleQubitState:
    """2x2 density matrix in the basis {|1>, |0>}; rho[0, 0] is the excited population."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        self.matrix = _check_density_matrix(matrix, 2, "single-qubit state")
        self.matrix.setflags(write=False)

    def __repr__(self) -> str:
        return f"SingleQubitState({self.matrix!r})"


class TwoQubitState:
    """4x4 density matrix in the product basis {|11>, |10>, |01>, |00>}."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        self.matrix = _check_density_matrix(matrix, 4, "two-qubit state")
        self.matrix.setflags(write=False)

    def reduced(self, keep: int) -> SingleQubitState:
        """Partial trace; ``keep`` = 0 keeps the first qubit, 1 the second."""
        tensor = self.matrix.reshape(2, 2, 2, 2)
        if keep == 0:
            return SingleQubitState(np.einsum("ijkj->ik", tensor))
        if keep == 1:
            return SingleQubitState(np.einsum("ijil->jl", tensor))
        raise DomainError("keep must be 0 or 1")

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix).min())

    def __repr__(self) -> str:
        return f"TwoQubitState({self.matrix!r})"


def _check_amplitude(p: complex) -> complex:
    p = complex(p)
    if abs(p) > 1.0 + P_TOLERANCE:
        raise DomainError(f"|p| must not exceed 1, got {abs(p):.12g}")
    return p


def kraus_operators(p: complex) -> Tuple[np.ndarray, np.ndarray]:
    """Operator-sum form of the single-qubit amplitude-damping map with amplitude p."""
    p = _check_amplitude(p)
    decay = np.sqrt(max(0.0, 1.0 - abs(p) ** 2))
    e0 = np.array([[p, 0.0], [0.0, 1.0]], dtype=complex)
    e1 = np.array([[0.0, 0.0], [decay, 0.0]], dtype=complex)
    return e0, e1


def single_qubit_map(rho0: SingleQubitState, p: complex) -> SingleQubitState:
    """Reduced qubit state at amplitude p for initial state rho0."""
    p = _check_amplitude(p)
    m = rho0.matrix
    q = abs(p) ** 2
    excited = m[0, 0].real * q
    coherence = m[0, 1] * p
    out = np.array(
        [[excited, coherence], [np.conj(coherence), 1.0 - excited]],
        dtype=complex,
    )
    return SingleQubitState(out)


def two_qubit_evolve(rho0: TwoQubitState, p: complex) -> TwoQubitState:
    """Apply the amplitude-damping map independently to both qubits."""
    ops = kraus_operators(p)
    rho = rho0.matrix
    out = np.zeros((4, 4), dtype=complex)
    for a in ops:
        for b in ops:
            k = np.kron(a, b)
            out += k @ rho @ k.conj().T
    # restore exact Hermiticity lost to rounding
    out = 0.5 * (out + out.conj().T)
    return TwoQubitState(out)


def two_qubit_evolve_series(rho0: TwoQubitState, p_values) -> np.ndarray:
    """Vectorized two_qubit_evolve over a sequence of amplitudes; returns shape (K, 4, 4)."""
    p = np.asarray(p_values, dtype=complex).ravel()
    if np.any(np.abs(p) > 1.0 + P_TOLERANCE):
        raise DomainError("|p| must not exceed 1")
    k = len(p)
    e0 = np.zeros((k, 2, 2), dtype=complex)
    e0[:, 0, 0] = p
    e0[:, 1, 1] = 1.0
    e1 = np.zeros((k, 2, 2), dtype=complex)
    e1[:, 1, 0] = np.sqrt(np.clip(1.0 - np.abs(p) ** 2, 0.0, None))

    out = np.zeros((k, 4, 4), dtype=complex)
    for a in (e0, e1):
        for b in (e0, e1):
            kron = np.einsum("kij,klm->kiljm", a, b).reshape(k, 4, 4)
            out += kron @ rho0.matrix @ np.conj(np.swapaxes(kron, 1, 2))
    return 0.5 * (out + np.conj(np.swapaxes(out, 1, 2)))


@dataclass(frozen=True)
class DecayProfile:
    """Gamma(t), Omega(t) and gamma(t) = Gamma / max Gamma on the trajectory grid.

    Points where |p| < EPS_P are undefined: ``defined`` is False there and
    the series hold NaN. gamma_norm is NaN throughout when Gamma never
    becomes positive.
    """

    times: np.ndarray
    gamma_raw: np.ndarray
    lamb: np.ndarray
    gamma_norm: np.ndarray
    defined: np.ndarray

    @property
    def gamma_max(self) -> float:
        return float(np.nanmax(self.gamma_raw))


def decay_profile(traj: AmplitudeTrajectory) -> DecayProfile:
    """Decay rate and Lamb shift from central differences of p(t)."""
    if len(traj) < 3:
        raise DomainError("decay_profile needs at least 3 grid points")
    p = traj.values
    dp = np.gradient(p, traj.dt, edge_order=2)
    defined = np.abs(p) > EPS_P
    ratio = np.full(len(p), np.nan + 1j * np.nan, dtype=complex)
    ratio[defined] = dp[defined] / p[defined]

    gamma_raw = -2.0 * ratio.real
    lamb = -2.0 * ratio.imag
    if not np.any(defined):
        raise DomainError("|p| vanishes on the whole grid; rates are undefined")
    if not np.all(defined):
        logger.warning("Decay rate undefined where |p| is below threshold", masked=int(np.sum(~defined)))

    gamma_max = np.nanmax(gamma_raw)
    if gamma_max > 0:
        gamma_norm = gamma_raw / gamma_max
    else:
        # no decay anywhere: Gamma is still reported, gamma(t) is not
        logger.warning("Decay rate never becomes positive; normalized rate undefined")
        gamma_norm = np.full(len(p), np.nan)
    return DecayProfile(
        times=traj.times,
        gamma_raw=gamma_raw,
        lamb=lamb,
        gamma_norm=gamma_norm,
        defined=defined,
    )


def log_population_rate(traj: AmplitudeTrajectory) -> np.ndarray:
    """-d ln|p|^2 / dt by finite differences (NaN where |p|^2 is not positive)."""
    q = traj.population
    with np.errstate(divide="ignore", invalid="ignore"):
        log_q = np.where(q > 0, np.log(q), np.nan)
    return -np.gradient(log_q, traj.dt, edge_order=2)


def rate_identity_deviation(traj: AmplitudeTrajectory, min_population: float = 1e-6) -> float:
    """Max |Gamma - (-d ln q/dt)| over points with q > min_population, relative to max |Gamma|."""
    profile = decay_profile(traj)
    reference = log_population_rate(traj)
    q = traj.population
    # np.gradient couples neighbours, so a point is usable only if its neighbours are too
    usable = q > min_population
    usable[1:-1] &= usable[:-2] & usable[2:]
    usable &= profile.defined
    if not np.any(usable):
        raise DomainError("no grid point has enough population for the rate check")
    scale = float(np.nanmax(np.abs(profile.gamma_raw[usable])))
    diff = np.abs(profile.gamma_raw[usable] - reference[usable])
    return float(np.max(diff) / scale)


@dataclass(frozen=True)
class SignLawReport:
    """Grid-level comparison of sign(dF) with sign(gamma)."""

    checked: int
    violations: int
    windows: Tuple[Tuple[float, float], ...]

    @property
    def holds(self) -> bool:
        return self.checked > 0 and self.violations == 0


def _windows(times: np.ndarray, mask: np.ndarray) -> Tuple[Tuple[float, float], ...]:
    spans = []
    start = None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            spans.append((float(times[start]), float(times[i - 1])))
            start = None
    if start is not None:
        spans.append((float(times[start]), float(times[-1])))
    return tuple(spans)


def sign_law_report(
    traj: AmplitudeTrajectory,
    fidelity: np.ndarray,
    expected_sign: int,
    region: np.ndarray,
    gamma_floor: float = 0.01,
) -> SignLawReport:
    """Check sign(dF/dt) == expected_sign * sign(gamma) inside ``region``.

    ``expected_sign`` is -1 where F_av grows with |p|^2 and +1 where it
    shrinks (below the critical point).
    """
    profile = decay_profile(traj)
    d_fid = np.gradient(np.asarray(fidelity, dtype=float), traj.dt, edge_order=2)
    mask = region & profile.defined & (np.abs(profile.gamma_norm) > gamma_floor)
    mask[0] = mask[-1] = False
    agree = np.sign(d_fid[mask]) == expected_sign * np.sign(profile.gamma_norm[mask])
    return SignLawReport(
        checked=int(mask.sum()),
        violations=int((~agree).sum()),
        windows=_windows(traj.times, region),
    )
