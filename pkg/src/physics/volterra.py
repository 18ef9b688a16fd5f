"""
Amplitude function p(t) of a qubit decaying into a zero-temperature reservoir.

p obeys the Volterra integro-differential equation

    dp/dt + i*omega_0*p(t) + integral_0^t p(t1) f(t - t1) dt1 = 0,   p(0) = 1

with f the closed-form memory kernel from ``physics.spectral``. The solver
keeps the full history (O(K^2) convolution cost). An independent oracle
diagonalizes a discretized reservoir in the single-excitation sector.
"""

import cmath
import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from core.logger import get_solver_logger
from .errors import DomainError, NumericError, ResolutionError, SolverDivergenceError
from .spectral import SpectralParams, j_omega, kernel

logger = get_solver_logger()

DEFAULT_DT = 0.005
DEFAULT_T_MAX = 50.0
MAX_STEP = 0.05
CONTRACTIVITY_TOLERANCE = 1e-6
STEP_COMMENSURABILITY = 1e-9
ORACLE_MIN_MODES = 100
ORACLE_MIN_BANDWIDTH = 10.0
_ORACLE_CHUNK = 512


@dataclass(frozen=True)
class AmplitudeTrajectory:
    """Complex samples of p(t) on a uniform grid t_k = k*dt."""

    dt: float
    times: np.ndarray
    values: np.ndarray
    params: SpectralParams

    def __post_init__(self):
        if self.times.shape != self.values.shape or self.times.ndim != 1:
            raise DomainError("times and values must be 1-D arrays of equal length")
        for arr in (self.times, self.values):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def population(self) -> np.ndarray:
        """Excited-state population |p(t)|^2."""
        return np.abs(self.values) ** 2

    @property
    def t_max(self) -> float:
        return float(self.times[-1])

    def every(self, stride: int) -> "AmplitudeTrajectory":
        """Subsample every ``stride``-th grid point."""
        return AmplitudeTrajectory(
            dt=self.dt * stride,
            times=self.times[::stride].copy(),
            values=self.values[::stride].copy(),
            params=self.params,
        )


def step_count(t_max: float, dt: float) -> int:
    """Number of steps dt in t_max; the window must hold a whole number of steps."""
    ratio = t_max / dt
    steps = int(round(ratio))
    if abs(ratio - steps) > STEP_COMMENSURABILITY * max(1.0, ratio):
        raise ResolutionError(f"t_max = {t_max:g} is not a whole number of steps dt = {dt:g}")
    return steps


def _grid(t_max: float, dt: float) -> np.ndarray:
    return dt * np.arange(step_count(t_max, dt) + 1, dtype=float)


def solve_p(
    params: SpectralParams,
    t_max: float = DEFAULT_T_MAX,
    dt: float = DEFAULT_DT,
    max_step: float = MAX_STEP,
    contractivity_tolerance: float = CONTRACTIVITY_TOLERANCE,
) -> AmplitudeTrajectory:
    """Integrate the amplitude equation with the second-order trapezoidal scheme.

    The convolution is a trapezoidal sum over the stored history. Because the
    equation is linear in p, the trapezoidal corrector is solved exactly
    instead of being iterated from an explicit predictor.

    Raises:
        ResolutionError: dt*omega_0 exceeds ``max_step``, dt > t_max, or t_max is
            not a whole number of steps.
        SolverDivergenceError: a non-finite value appears; ``index`` names the grid point.

    A trajectory whose modulus exceeds 1 + ``contractivity_tolerance`` is
    returned but logged as a warning.
    """
    if not (t_max > 0 and math.isfinite(t_max)):
        raise DomainError(f"t_max must be positive, got {t_max}")
    if not (0 < dt <= t_max):
        raise ResolutionError(f"dt must satisfy 0 < dt <= t_max, got dt={dt}, t_max={t_max}")
    if dt * params.omega_0 > max_step:
        raise ResolutionError(
            f"dt*omega_0 = {dt * params.omega_0:g} exceeds the resolution guard {max_step:g}"
        )

    started = time.perf_counter()
    times = _grid(t_max, dt)
    steps = len(times) - 1
    f = kernel(params, times)
    f_rev = f[::-1].copy()
    w0 = params.omega_0
    h = dt
    half = 0.5 * h

    p = np.empty(steps + 1, dtype=complex)
    p[0] = 1.0
    g = -1j * w0  # dp/dt at t = 0
    denom = 1.0 + half * (1j * w0 + half * f[0])

    for n in range(steps):
        # history part of the trapezoidal convolution at t_{n+1}; the j = n+1 end is implicit
        history = h * (0.5 * f[n + 1] * p[0] + np.dot(f_rev[steps - n:steps], p[1:n + 1]))
        p_next = (p[n] + half * g - half * history) / denom
        if not cmath.isfinite(p_next):
            logger.error("Amplitude solver diverged", index=n + 1, s=str(params.s), eta=params.eta)
            raise SolverDivergenceError(f"non-finite amplitude at grid index {n + 1}", index=n + 1)
        p[n + 1] = p_next
        g = -1j * w0 * p_next - (history + half * f[0] * p_next)

    overshoot = float(np.max(np.abs(p))) - 1.0
    if overshoot > contractivity_tolerance:
        logger.warning(
            "Amplitude exceeds unit modulus",
            overshoot=overshoot,
            s=str(params.s),
            eta=params.eta,
            dt=dt,
        )

    logger.debug(
        "Amplitude solve finished",
        s=str(params.s),
        eta=params.eta,
        omega_c=params.omega_c,
        steps=steps,
        elapsed=round(time.perf_counter() - started, 3),
    )
    return AmplitudeTrajectory(dt=dt, times=times, values=p, params=params)


def oracle_p_discrete(
    params: SpectralParams,
    n_modes: int,
    omega_max: float,
    t_grid: Sequence[float],
    coupling_scale: float = 1.0,
) -> AmplitudeTrajectory:
    """p(t) from exact diagonalization of a discretized reservoir.

    The reservoir is replaced by ``n_modes`` equally spaced modes on
    (0, omega_max] with |g_k|^2 = J(omega_k) * d_omega. ``coupling_scale``
    multiplies every g_k (0 decouples the qubit).
    """
    if n_modes < ORACLE_MIN_MODES:
        raise DomainError(f"n_modes must be >= {ORACLE_MIN_MODES}, got {n_modes}")
    if omega_max < ORACLE_MIN_BANDWIDTH * params.omega_c:
        raise DomainError(
            f"omega_max must be >= {ORACLE_MIN_BANDWIDTH:g}*omega_c, got {omega_max}"
        )
    times = np.asarray(t_grid, dtype=float)
    if times.ndim != 1 or len(times) < 2 or np.any(np.diff(times) <= 0) or times[0] < 0:
        raise DomainError("t_grid must be a strictly increasing 1-D grid of times >= 0")

    d_omega = omega_max / n_modes
    modes = d_omega * np.arange(1, n_modes + 1)
    couplings = coupling_scale * np.sqrt(j_omega(params, modes) * d_omega)

    hamiltonian = np.zeros((n_modes + 1, n_modes + 1))
    hamiltonian[0, 0] = params.omega_0
    hamiltonian[np.arange(1, n_modes + 1), np.arange(1, n_modes + 1)] = modes
    hamiltonian[0, 1:] = couplings
    hamiltonian[1:, 0] = couplings

    try:
        energies, vectors = scipy.linalg.eigh(hamiltonian)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc

    weights = np.abs(vectors[0, :]) ** 2
    weights /= weights.sum()

    values = np.empty(len(times), dtype=complex)
    for start in range(0, len(times), _ORACLE_CHUNK):
        chunk = times[start:start + _ORACLE_CHUNK]
        values[start:start + _ORACLE_CHUNK] = np.exp(-1j * np.outer(chunk, energies)) @ weights
    # unitary evolution is the identity at t = 0
    values[times == 0.0] = 1.0

    logger.debug("Oracle diagonalization finished", n_modes=n_modes, omega_max=omega_max)
    return AmplitudeTrajectory(dt=float(times[1] - times[0]), times=times, values=values, params=params)


def max_deviation(a: AmplitudeTrajectory, b: AmplitudeTrajectory, t_end: Optional[float] = None) -> float:
    """Max |p_a - p_b| over shared grid points (t <= t_end if given)."""
    if len(a) != len(b) or not np.allclose(a.times, b.times, rtol=0, atol=1e-9 * max(a.dt, 1.0)):
        raise DomainError("trajectories must share a time grid")
    mask = np.ones(len(a), dtype=bool) if t_end is None else a.times <= t_end + 1e-9
    return float(np.max(np.abs(a.values[mask] - b.values[mask])))


def plateau_population(traj: AmplitudeTrajectory, fraction: float = 0.1) -> float:
    """Mean of |p|^2 over the final ``fraction`` of the window."""
    if not 0 < fraction <= 1:
        raise DomainError("fraction must lie in (0, 1]")
    start = traj.times[-1] * (1.0 - fraction)
    return float(np.mean(traj.population[traj.times >= start]))


@dataclass(frozen=True)
class ConvergenceStudy:
    """Step-halving deviations for grids dt, dt/2, dt/4."""

    coarse: float
    fine: float

    @property
    def ratio(self) -> float:
        return self.coarse / self.fine if self.fine > 0 else math.inf


def convergence_study(params: SpectralParams, t_max: float, dt: float) -> ConvergenceStudy:
    """Solve at dt, dt/2, dt/4 and compare on the coarse grid."""
    p1 = solve_p(params, t_max, dt)
    p2 = solve_p(params, t_max, dt / 2)
    p4 = solve_p(params, t_max, dt / 4)
    coarse = float(np.max(np.abs(p1.values - p2.every(2).values)))
    fine = float(np.max(np.abs(p2.values - p4.every(2).values)))
    return ConvergenceStudy(coarse=coarse, fine=fine)
