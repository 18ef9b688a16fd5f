"""
Maximal average teleportation fidelity of a two-qubit channel.

F_av = 1/2 + N(rho)/6 with N the sum of singular values of the 3x3 Pauli
correlation block T (t_nm = Tr(rho sigma_n x sigma_m)). For Werner-like
channels decaying in independent reservoirs, N depends on |p| only.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .dynamics import TwoQubitState
from .errors import DomainError
from .spectral import BoundState, SpectralParams, bound_state

CLASSICAL_LIMIT = 2.0 / 3.0
ENTANGLEMENT_THRESHOLD = 1.0 / 3.0
IMAG_TOLERANCE = 1e-12

# Pauli matrices in the basis {|1>, |0>}; sigma_z|1> = +|1>
SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class BehaviourClass(Enum):
    """Shape of F_av as a function of |p| for a Werner-like channel."""
    MONOTONE = "monotone"
    NON_MONOTONE = "non-monotone"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class WernerParams:
    """Mixing parameter r of r|Psi><Psi| + (1 - r) I/4."""

    r: float

    def __post_init__(self):
        if not (0.0 <= self.r <= 1.0):
            raise DomainError(f"Werner mixing parameter must lie in [0, 1], got {self.r}")


@dataclass(frozen=True)
class BlochTensor:
    """3x3 real correlation matrix t_nm, n, m in {1, 2, 3}."""

    matrix: np.ndarray

    @property
    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.matrix, compute_uv=False)


def _as_werner(r) -> WernerParams:
    return r if isinstance(r, WernerParams) else WernerParams(float(r))


def bell_state() -> TwoQubitState:
    """|Psi><Psi| with |Psi> = (|00> + |11>)/sqrt(2)."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / math.sqrt(2.0)
    return TwoQubitState(np.outer(psi, psi.conj()))


def werner_state(params: WernerParams) -> TwoQubitState:
    params = _as_werner(params)
    bell = bell_state().matrix
    return TwoQubitState(params.r * bell + (1.0 - params.r) / 4.0 * np.eye(4))


def correlation_coefficients(rho: TwoQubitState) -> np.ndarray:
    """Full 4x4 set Tr(rho sigma_n x sigma_m), n, m in {0..3}, imaginary residue checked."""
    coeffs = np.empty((4, 4), dtype=complex)
    for n, sn in enumerate(SIGMA):
        for m, sm in enumerate(SIGMA):
            coeffs[n, m] = np.trace(rho.matrix @ np.kron(sn, sm))
    if np.max(np.abs(coeffs.imag)) > IMAG_TOLERANCE:
        raise DomainError("correlation coefficients are not real; input is not Hermitian")
    return coeffs.real


def reconstruct(coefficients: np.ndarray) -> np.ndarray:
    """rho = 1/4 sum t_nm sigma_n x sigma_m."""
    rho = np.zeros((4, 4), dtype=complex)
    for n, sn in enumerate(SIGMA):
        for m, sm in enumerate(SIGMA):
            rho += coefficients[n, m] * np.kron(sn, sm)
    return rho / 4.0


def bloch_tensor(rho: TwoQubitState) -> BlochTensor:
    return BlochTensor(correlation_coefficients(rho)[1:, 1:])


def n_of_rho(rho: TwoQubitState) -> float:
    """Tr sqrt(T^dagger T) as the sum of singular values of T."""
    return float(np.sum(bloch_tensor(rho).singular_values))


def f_avg(rho: TwoQubitState) -> float:
    return 0.5 + n_of_rho(rho) / 6.0


_PAULI_PAIRS = np.array(
    [[np.kron(SIGMA[n], SIGMA[m]) for m in range(1, 4)] for n in range(1, 4)]
)


def f_avg_series(states: np.ndarray) -> np.ndarray:
    """F_av for a stack of two-qubit density matrices of shape (K, 4, 4)."""
    states = np.asarray(states, dtype=complex)
    tensors = np.einsum("kij,nmji->knm", states, _PAULI_PAIRS)
    if np.max(np.abs(tensors.imag), initial=0.0) > IMAG_TOLERANCE:
        raise DomainError("correlation coefficients are not real; input is not Hermitian")
    n_values = np.linalg.svd(tensors.real, compute_uv=False).sum(axis=-1)
    return 0.5 + n_values / 6.0


def n_closed_form(r, p_abs):
    """N for an evolved Werner-like channel: (r+1)|p|^4 + 2(r-1)|p|^2 + 1.

    ``p_abs`` may be a scalar or an array of moduli in [0, 1].
    """
    r = _as_werner(r).r
    p = np.asarray(p_abs, dtype=float)
    if np.any(p < 0) or np.any(p > 1.0 + 1e-12):
        raise DomainError("|p| must lie in [0, 1]")
    q = p ** 2
    value = (r + 1.0) * q ** 2 + 2.0 * (r - 1.0) * q + 1.0
    return float(value) if np.ndim(p_abs) == 0 else value


def f_avg_closed_form(r, p_abs):
    return 0.5 + n_closed_form(r, p_abs) / 6.0


def critical_p_squared(r) -> float:
    """|p|_c^2 = (1 - r)/(1 + r), where F_av is minimal in |p|^2."""
    r = _as_werner(r).r
    return (1.0 - r) / (1.0 + r)


def advantage_p_squared(r) -> float:
    """F_av > 2/3 exactly when |p|^2 exceeds this value (>= 1 means never)."""
    return 2.0 * critical_p_squared(r)


def behaviour_class(r) -> BehaviourClass:
    r = _as_werner(r).r
    if r == 1.0:
        return BehaviourClass.MONOTONE
    if r > ENTANGLEMENT_THRESHOLD:
        return BehaviourClass.NON_MONOTONE
    return BehaviourClass.CLASSICAL


def asymptotic_f_avg(r, params: SpectralParams) -> float:
    """Long-time fidelity: the bound-state population fixes |p(inf)|."""
    state: Optional[BoundState] = bound_state(params)
    p_abs = 0.0 if state is None else min(1.0, state.residue)
    return f_avg_closed_form(r, p_abs)
