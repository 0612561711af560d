"""Localization coefficients of a component wavefunction against its target interval.

For a state ``phiL`` meant to sit inside |x| <= L/2:

* coherent spread  ``C = (1/sqrt(L)) * integral(phiL)`` over the whole axis,
* statistical mismatch ``eta`` = probability outside the interval,
* coherent cross-section ``gamma`` = real part of the fraction of the amplitude
  integral collected inside the interval.

``1 - gamma`` is called the coherent mismatch.  The generic functions work by
quadrature on any wavefunction; :func:`gaussian_coefficients` gives the closed
forms for the Gaussian family used throughout the sweeps.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError
from .numerics import DEFAULT_SPEC, QuadratureSpec, erf, erfc
from .wavefunction import FULL_AXIS, POSITION, Gaussian, Interval, Wavefunction, amplitude_integral, interval_probability


@dataclass(frozen=True)
class LocalizationCoefficients:
    coherent_spread: complex
    mismatch: float
    cross_section: float

    def __post_init__(self):
        object.__setattr__(self, "coherent_spread", complex(self.coherent_spread))
        if not -1e-12 <= self.mismatch <= 1 + 1e-12:
            raise ValueError(f"mismatch must lie in [0, 1], got {self.mismatch}")

    @property
    def csq(self) -> float:
        """Squared magnitude |C|**2, the only form downstream formulas use."""
        return abs(self.coherent_spread) ** 2

    @property
    def coherent_mismatch(self) -> float:
        return 1.0 - self.cross_section


RECTANGLE_COEFFICIENTS = LocalizationCoefficients(1.0, 0.0, 1.0)


def _check_position(phiL):
    if phiL.representation is not POSITION:
        raise ValueError("localization coefficients are defined on the position representation")


def coherent_spread(phiL: Wavefunction, L: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    _check_position(phiL)
    return amplitude_integral(phiL, FULL_AXIS, spec) / math.sqrt(L)


def statistical_mismatch(phiL: Wavefunction, L: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    _check_position(phiL)
    inside = interval_probability(phiL, Interval.centered(L), spec, method="quadrature")
    # Clip roundoff so that eta stays a probability.
    return min(max(1.0 - inside, 0.0), 1.0)


def coherent_cross_section(phiL: Wavefunction, L: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    _check_position(phiL)
    total = amplitude_integral(phiL, FULL_AXIS, spec)
    if abs(total) < 1e-12 * math.sqrt(L):
        raise DegenerateStateError("the amplitude integral vanishes; gamma is undefined")
    inside = amplitude_integral(phiL, Interval.centered(L), spec)
    return (inside / total).real


def localization_coefficients(
    phiL: Wavefunction, L: float = 1.0, spec: QuadratureSpec = DEFAULT_SPEC
) -> LocalizationCoefficients:
    """All three coefficients of ``phiL`` by quadrature."""
    return LocalizationCoefficients(
        coherent_spread(phiL, L, spec),
        statistical_mismatch(phiL, L, spec),
        coherent_cross_section(phiL, L, spec),
    )


def gaussian_eta(csq):
    """Statistical mismatch of the Gaussian with squared coherent spread ``csq``."""
    return erfc(math.sqrt(math.pi) / np.asarray(csq, dtype=float))


def gaussian_gamma(csq):
    """Coherent cross-section of the Gaussian with squared coherent spread ``csq``."""
    return erf(math.sqrt(math.pi / 2) / np.asarray(csq, dtype=float))


def gaussian_coefficients(csq: float) -> LocalizationCoefficients:
    if not csq > 0:
        raise ValueError(f"squared coherent spread must be positive, got {csq}")
    return LocalizationCoefficients(math.sqrt(csq), float(gaussian_eta(csq)), float(gaussian_gamma(csq)))


def gaussian_component(csq: float, L: float = 1.0) -> Gaussian:
    """Position-localized Gaussian sqrt(2/(csq L)) exp(-2 pi (x/(csq L))**2)."""
    if not csq > 0:
        raise ValueError(f"squared coherent spread must be positive, got {csq}")
    return Gaussian(sigma=csq * L / math.sqrt(8.0 * math.pi), amplitude=math.sqrt(2.0 / (csq * L)))


def gaussian_sigmas(csq: float, U: float, L: float = 1.0):
    """Position widths (sigma1, sigma2) of the position- and momentum-localized Gaussians."""
    if not csq > 0 or not U > 0:
        raise ValueError("csq and U must be positive")
    sigma1 = csq * L / math.sqrt(8.0 * math.pi)
    sigma2 = L / (math.sqrt(2.0 * math.pi) * U * csq)
    return sigma1, sigma2


def csq_from_sigma(sigma1: float, L: float = 1.0) -> float:
    return math.sqrt(8.0 * math.pi) * sigma1 / L


def cross_probability(csq, U):
    """Small-U estimate |C|**2 U of P(B) for the position-localized component."""
    return csq * U


def single_component_joint(coeffs: LocalizationCoefficients, U: float) -> float:
    """P(L|phiL) + P(B|phiL) - 1 in the small-U approximation."""
    return coeffs.csq * U - coeffs.mismatch
