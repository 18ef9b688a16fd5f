"""
Physics layer: reservoir spectra, the amplitude solver, channel dynamics and
teleportation fidelity.
"""

from .errors import (
    DomainError,
    NumericError,
    ResolutionError,
    ScenarioError,
    SolverDivergenceError,
    TeleportSimError,
)
from .spectral import (
    BoundState,
    Ohmicity,
    SpectralParams,
    bound_state,
    bound_state_threshold,
    j_omega,
    kernel,
)
from .volterra import AmplitudeTrajectory, oracle_p_discrete, solve_p
from .dynamics import (
    DecayProfile,
    SingleQubitState,
    TwoQubitState,
    decay_profile,
    single_qubit_map,
    two_qubit_evolve,
)
from .fidelity import (
    BlochTensor,
    WernerParams,
    bloch_tensor,
    critical_p_squared,
    f_avg,
    n_closed_form,
    n_of_rho,
    werner_state,
)

__all__ = [
    "AmplitudeTrajectory",
    "BlochTensor",
    "BoundState",
    "DecayProfile",
    "DomainError",
    "NumericError",
    "Ohmicity",
    "ResolutionError",
    "ScenarioError",
    "SingleQubitState",
    "SolverDivergenceError",
    "SpectralParams",
    "TeleportSimError",
    "TwoQubitState",
    "WernerParams",
    "bloch_tensor",
    "bound_state",
    "bound_state_threshold",
    "critical_p_squared",
    "decay_profile",
    "f_avg",
    "j_omega",
    "kernel",
    "n_closed_form",
    "n_of_rho",
    "oracle_p_discrete",
    "single_qubit_map",
    "solve_p",
    "two_qubit_evolve",
    "werner_state",
]
