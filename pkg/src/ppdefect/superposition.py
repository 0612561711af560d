"""Constructive superposition of a position-localized and a momentum-localized component."""

import math
import warnings
from dataclasses import dataclass

from .errors import PhaseUndefinedWarning
from .localization import csq_from_sigma, gaussian_component
from .numerics import DEFAULT_SPEC, QuadratureSpec
from .scenario import Scenario
from .wavefunction import (
    MOMENTUM,
    POSITION,
    Gaussian,
    Interval,
    Rectangle,
    Representation,
    Superposition,
    Wavefunction,
    inner_product,
    interval_probability,
    momentum_companion,
    norm_squared,
)

__all__ = [
    "Scenario",
    "PlusState",
    "build_plus_state",
    "gaussian_plus_state",
    "plus_state_from_sigmas",
    "rectangle_plus_state",
    "overlap_estimate",
    "plus_interval_probability",
    "plus_interval_probability_formula",
    "joint_lower_bound_exact",
    "joint_lower_bound_formula",
    "uncertainty_bound_check",
]


@dataclass(frozen=True)
class PlusState:
    """(|phiL> + |phiB>) / sqrt(2 + 2 <phiL|phiB>) with a real, non-negative overlap.

    Both components are stored in position representation.
    """

    phiL: Wavefunction
    phiB: Wavefunction
    overlap: float
    phase_defined: bool = True

    @property
    def normalization(self) -> float:
        return 1.0 / math.sqrt(2.0 + 2.0 * self.overlap)

    @property
    def wavefunction(self) -> Superposition:
        n = self.normalization
        return Superposition(((n, self.phiL), (n, self.phiB)))

    def in_representation(self, representation: Representation) -> Wavefunction:
        return self.wavefunction.in_representation(representation)


def build_plus_state(phiL: Wavefunction, scenario: Scenario, spec: QuadratureSpec = DEFAULT_SPEC) -> PlusState:
    """Pair ``phiL`` with its momentum companion and fix the relative phase.

    The companion (never ``phiL``) is multiplied by the unit phase that makes
    the overlap real and non-negative.  A vanishing overlap leaves the phase
    undefined; the state is still returned, flagged and with a warning.
    """
    if phiL.representation is not POSITION:
        raise ValueError("phiL must be given in position representation")
    norm = norm_squared(phiL, spec)
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"phiL must be normalized, got norm {norm:.9g}")
    phiB = momentum_companion(phiL, scenario).fourier_transform()
    raw = inner_product(phiL, phiB, spec)
    if abs(raw) < 1e-12:
        warnings.warn("components are orthogonal; overlap phase is undefined", PhaseUndefinedWarning, stacklevel=2)
        return PlusState(phiL, phiB, 0.0, phase_defined=False)
    phase = raw.conjugate() / abs(raw)
    if phase != 1:
        phiB = phiB.scaled(phase)
    return PlusState(phiL, phiB, abs(raw))


def gaussian_plus_state(csq: float, U: float, L: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC):
    """(PlusState, Scenario) for the Gaussian parameterized by (|C|**2, U)."""
    scenario = Scenario(U=U, L=L)
    return build_plus_state(gaussian_component(csq, L), scenario, spec), scenario


def plus_state_from_sigmas(sigma1: float, sigma2: float, L: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC):
    """(PlusState, Scenario) for the two-Gaussian state with position widths sigma1, sigma2."""
    scenario = Scenario.from_sigmas(sigma1, sigma2, L)
    return build_plus_state(Gaussian(sigma1), scenario, spec), scenario


def rectangle_plus_state(U: float, L: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC):
    scenario = Scenario(U=U, L=L)
    return build_plus_state(Rectangle(L), scenario, spec), scenario


def gaussian_csq(state: PlusState, L: float = 1.0) -> float:
    if not isinstance(state.phiL, Gaussian):
        raise TypeError("phiL is not a Gaussian")
    return csq_from_sigma(state.phiL.sigma, L)


def overlap_estimate(csq, U):
    """Small-U estimate |C|**2 sqrt(U) of <phiL|phiB>."""
    return csq * math.sqrt(U)


def plus_interval_probability(
    state: PlusState, scenario: Scenario, which: str = "L", spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """P(L) over |x| <= L/2 or P(B) over |p| <= B/2, by quadrature."""
    if which == "L":
        return interval_probability(state.wavefunction, Interval.centered(scenario.L), spec)
    if which == "B":
        return interval_probability(state.in_representation(MOMENTUM), Interval.centered(scenario.B), spec)
    raise ValueError(f"which must be 'L' or 'B', got {which!r}")


def plus_interval_probability_formula(csq, eta, gamma, U):
    """Coefficient estimate (1 - eta + |C|^2 U + 2 gamma |C|^2 sqrt(U)) / (2 + 2 |C|^2 sqrt(U))."""
    s = csq * U**0.5
    return (1.0 - eta + csq * U + 2.0 * gamma * s) / (2.0 + 2.0 * s)


def joint_lower_bound_exact(state: PlusState, scenario: Scenario, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """P(L) + P(B) - 1, the minimal joint probability of L and B."""
    return plus_interval_probability(state, scenario, "L", spec) + plus_interval_probability(state, scenario, "B", spec) - 1.0


def joint_lower_bound_formula(csq, eta, gamma, U):
    s = csq * U**0.5
    return (csq * U + (2.0 * gamma - 1.0) * s - eta) / (1.0 + s)


def uncertainty_bound_check(pl: float, pb: float, U: float) -> bool:
    """True when P(L) + P(B) <= 1 + sqrt(U) (with 1e-9 slack)."""
    return pl + pb <= 1.0 + math.sqrt(U) + 1e-9
