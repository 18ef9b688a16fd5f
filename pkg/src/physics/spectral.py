"""
Reservoir spectral densities of the Ohmic family.

J(omega) = eta * omega**s * omega_c**(1 - s) * exp(-omega / omega_c)

Closed-form memory kernels exist for s = 1/2 and positive integer s only,
so the Ohmicity exponent is a two-variant discriminant rather than a float.
All frequencies are expressed in units of the qubit frequency omega_0.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np
from scipy import integrate, optimize
from scipy.special import gamma as gamma_fn

from .errors import DomainError, NumericError

ArrayLike = Union[float, np.ndarray]

# exp(-50) < 2e-22, far below any tolerance we test against
QUADRATURE_CUTOFFS = 50.0


class OhmicityKind(Enum):
    """Supported spectral-density regimes."""
    HALF = "half"
    INTEGER = "integer"


@dataclass(frozen=True)
class Ohmicity:
    """Ohmicity exponent s: either exactly 1/2 or a positive integer."""

    kind: OhmicityKind
    n: int = 0

    def __post_init__(self):
        if self.kind is OhmicityKind.INTEGER and self.n < 1:
            raise DomainError(f"integer Ohmicity must be >= 1, got {self.n}")
        if self.kind is OhmicityKind.HALF and self.n != 0:
            raise DomainError("half Ohmicity carries no integer order")

    @classmethod
    def half(cls) -> "Ohmicity":
        return cls(OhmicityKind.HALF)

    @classmethod
    def integer(cls, n: int) -> "Ohmicity":
        return cls(OhmicityKind.INTEGER, int(n))

    @classmethod
    def parse(cls, text: Union[str, int, float, "Ohmicity"]) -> "Ohmicity":
        """Parse '1/2', '0.5', 'half' or a positive integer."""
        if isinstance(text, Ohmicity):
            return text
        if isinstance(text, (int, float)) and not isinstance(text, bool):
            value = float(text)
        else:
            token = str(text).strip().lower()
            if token in ("1/2", "half", "0.5", ".5"):
                return cls.half()
            try:
                value = float(token)
            except ValueError as exc:
                raise DomainError(f"cannot parse Ohmicity exponent {text!r}") from exc
        if value == 0.5:
            return cls.half()
        if value.is_integer() and value >= 1:
            return cls.integer(int(value))
        raise DomainError(
            f"Ohmicity exponent must be 1/2 or a positive integer, got {text!r}"
        )

    @property
    def value(self) -> float:
        return 0.5 if self.kind is OhmicityKind.HALF else float(self.n)

    @property
    def label(self) -> str:
        return "1/2" if self.kind is OhmicityKind.HALF else str(self.n)

    @property
    def regime(self) -> str:
        if self.kind is OhmicityKind.HALF:
            return "sub-Ohmic"
        return "Ohmic" if self.n == 1 else "super-Ohmic"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class SpectralParams:
    """Reservoir descriptor: Ohmicity s, coupling eta, cutoff omega_c, qubit omega_0."""

    s: Ohmicity
    eta: float
    omega_c: float
    omega_0: float = 1.0

    def __post_init__(self):
        if not isinstance(self.s, Ohmicity):
            object.__setattr__(self, "s", Ohmicity.parse(self.s))
        for name in ("eta", "omega_c", "omega_0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a positive finite number, got {value}")

    def with_eta(self, eta: float) -> "SpectralParams":
        return SpectralParams(self.s, eta, self.omega_c, self.omega_0)


@dataclass(frozen=True)
class BoundState:
    """Discrete eigenstate of the qubit+reservoir Hamiltonian below the continuum."""

    energy: float
    residue: float

    @property
    def population(self) -> float:
        """Long-time excited population |p(inf)|^2."""
        return self.residue ** 2


def _check_nonnegative(name: str, value: ArrayLike) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite and >= 0")
    return arr


def _scalar_or_array(arr: np.ndarray, like: ArrayLike):
    return arr.item() if np.ndim(like) == 0 else arr


def j_omega(params: SpectralParams, omega: ArrayLike) -> ArrayLike:
    """Spectral density J(omega); accepts scalars or arrays."""
    w = _check_nonnegative("omega", omega)
    s = params.s.value
    result = params.eta * np.power(w, s) * params.omega_c ** (1.0 - s) * np.exp(-w / params.omega_c)
    return _scalar_or_array(result, omega)


def kernel(params: SpectralParams, tau: ArrayLike) -> ArrayLike:
    """Memory kernel f(tau) = integral of J(omega) exp(-i omega tau) in closed form."""
    t = _check_nonnegative("tau", tau)
    wc = params.omega_c
    x = wc * t
    if params.s.kind is OhmicityKind.INTEGER:
        n = params.s.n
        result = math.factorial(n) * params.eta * wc ** 2 / (1.0 + 1j * x) ** (n + 1)
    else:
        phase = 1.5 * np.arctan(x)
        result = (
            0.5 * math.sqrt(math.pi) * params.eta * wc ** 2
            * np.exp(-1j * phase) / (1.0 + x ** 2) ** 0.75
        )
    return _scalar_or_array(np.asarray(result, dtype=complex), tau)


def kernel_quadrature(params: SpectralParams, tau: float, epsabs: float = 1e-11) -> complex:
    """Reference value of f(tau) by adaptive quadrature of the defining Fourier integral."""
    if tau < 0:
        raise DomainError("tau must be >= 0")
    upper = QUADRATURE_CUTOFFS * params.omega_c

    def density(w: float) -> float:
        return j_omega(params, w)

    if tau == 0:
        value, _ = integrate.quad(density, 0.0, upper, epsabs=epsabs, limit=400)
        return complex(value, 0.0)
    re, _ = integrate.quad(density, 0.0, upper, weight="cos", wvar=tau, epsabs=epsabs, limit=400)
    im, _ = integrate.quad(density, 0.0, upper, weight="sin", wvar=tau, epsabs=epsabs, limit=400)
    return complex(re, -im)


def bound_state_threshold(params: SpectralParams) -> float:
    """Critical coupling eta_c above which a bound state forms (eta is ignored)."""
    if params.s.kind is OhmicityKind.INTEGER:
        return params.omega_0 / (math.factorial(params.s.n - 1) * params.omega_c)
    return params.omega_0 / (math.sqrt(math.pi) * params.omega_c)


def has_bound_state(params: SpectralParams) -> bool:
    return params.eta > bound_state_threshold(params)


def markovian_decay_rate(params: SpectralParams) -> float:
    """Weak-coupling (Weisskopf-Wigner) decay rate 2*pi*J(omega_0)."""
    return 2.0 * math.pi * j_omega(params, params.omega_0)


def _self_energy(params: SpectralParams, energy: float, power: int) -> float:
    """Integral of J(omega) / (omega - E)**power for E < 0."""
    s = params.s.value
    wc = params.omega_c

    def integrand(w: float) -> float:
        return params.eta * w ** s * wc ** (1.0 - s) * math.exp(-w / wc) / (w - energy) ** power

    # the integrand peaks near omega = |E| when E is close to the threshold
    points = [-energy] if -energy < wc else None
    head, _ = integrate.quad(integrand, 0.0, wc, points=points, limit=400)
    tail, _ = integrate.quad(integrand, wc, np.inf, limit=400)
    return head + tail


def bound_state(params: SpectralParams) -> Optional[BoundState]:
    """Negative-energy eigenvalue and residue of the single-excitation Hamiltonian.

    Returns None when eta does not exceed the bound-state threshold.
    """
    if not has_bound_state(params):
        return None

    def pole_condition(energy: float) -> float:
        return energy - params.omega_0 + _self_energy(params, energy, 1)

    # pole_condition is increasing in E and positive as E -> 0-
    upper = -1e-12 * params.omega_0
    lower = -params.omega_0
    for _ in range(60):
        if pole_condition(lower) < 0:
            break
        lower *= 2.0
    else:
        raise NumericError("could not bracket the bound-state energy")

    try:
        energy = optimize.brentq(pole_condition, lower, upper, xtol=1e-14, rtol=1e-12)
    except (ValueError, RuntimeError) as exc:
        raise NumericError(f"bound-state root search failed: {exc}") from exc

    residue = 1.0 / (1.0 + _self_energy(params, energy, 2))
    return BoundState(energy=float(energy), residue=float(residue))


def integrated_density(params: SpectralParams) -> float:
    """Closed-form integral of J over [0, inf): Gamma(s+1) * eta * omega_c**2."""
    return float(gamma_fn(params.s.value + 1.0)) * params.eta * params.omega_c ** 2
