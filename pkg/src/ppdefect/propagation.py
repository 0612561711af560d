"""Free evolution to t = m L / B, the interference pattern and the probability P(M).

Evolution multiplies momentum amplitudes by exp(-i p**2 t / (2 m hbar)).  The
opposite sign convention conjugates every amplitude and leaves all densities
and probabilities unchanged.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .numerics import DEFAULT_SPEC, QuadratureSpec, integrate_complex
from .scenario import Scenario
from .superposition import PlusState
from .wavefunction import Wavefunction

# P(M) quadrature always starts from at least this many panels on [-L, L].
MIN_PANELS_M = 64


@dataclass(frozen=True)
class PropagatedState:
    amplitude: Wavefunction
    time: float
    scenario: Scenario
    source: PlusState


def propagate_free(wf: Wavefunction, t: float, scenario: Scenario = None) -> Wavefunction:
    """Evolve ``wf`` freely for time ``t`` (mass taken from ``scenario``, default 1)."""
    mass = 1.0 if scenario is None else scenario.mass
    return wf.propagated(Scenario.hbar * t / mass)


def propagate_plus_state(state: PlusState, scenario: Scenario, time: float = None) -> PropagatedState:
    t = scenario.time if time is None else time
    return PropagatedState(propagate_free(state.wavefunction, t, scenario), t, scenario, state)


def _evolved_components(state, scenario):
    n = state.normalization
    phiL = propagate_free(state.phiL, scenario.time, scenario)
    phiB = propagate_free(state.phiB, scenario.time, scenario)
    return n, phiL, phiB


def interference_pattern_density(state: PlusState, scenario: Scenario, x):
    """Exact |<x|U(mL/B)|psi+>|**2."""
    n, phiL, phiB = _evolved_components(state, scenario)
    return np.abs(n * (np.asarray(phiL.evaluate(x)) + np.asarray(phiB.evaluate(x)))) ** 2


def envelope_density(state: PlusState, scenario: Scenario, x):
    """Upper envelope of the pattern: the two evolved components in phase everywhere."""
    n, phiL, phiB = _evolved_components(state, scenario)
    return (n * (np.abs(phiL.evaluate(x)) + np.abs(phiB.evaluate(x)))) ** 2


def approximate_pattern_density(state: PlusState, scenario: Scenario, x):
    """Stationary-companion approximation 2 |phiB(x)|^2 cos^2((pi/2)(sqrt(U) x/L)^2 - pi/8) / (1 + overlap)."""
    x = np.asarray(x, dtype=float)
    phase = 0.5 * math.pi * (scenario.sqrt_U * x / scenario.L) ** 2 - math.pi / 8.0
    return 2.0 * np.abs(state.phiB.evaluate(x)) ** 2 * np.cos(phase) ** 2 / (1.0 + state.overlap)


def probability_M_exact(state: PlusState, scenario: Scenario, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Probability of |x(t)| <= L at t = m L / B, with the full interference phase."""
    L = scenario.L
    return integrate_complex(
        lambda x: interference_pattern_density(state, scenario, x), -L, L, spec, min_panels=MIN_PANELS_M
    ).real


def probability_M_envelope_exact(state: PlusState, scenario: Scenario, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Integral of :func:`envelope_density` over [-L, L]; a strict upper bound on P(M)."""
    L = scenario.L
    return integrate_complex(
        lambda x: envelope_density(state, scenario, x), -L, L, spec, min_panels=MIN_PANELS_M
    ).real


def probability_M_envelope(csq, U):
    """Coefficient estimate 4 |C|^2 U / (1 + |C|^2 sqrt(U)) of the envelope bound on P(M)."""
    return 4.0 * csq * U / (1.0 + csq * np.sqrt(U))


def scaled_pattern(U, x_over_L):
    """Pattern at t = mL/B in units of the straight-line density, for eta = 0 and gamma = 1."""
    s = np.sqrt(U)
    return 4.0 * s / (1.0 + s) * (0.5 + 0.5 * np.cos(np.pi * (s * np.asarray(x_over_L)) ** 2 - np.pi / 4.0))


def effective_width(U: float, L: float = 1.0) -> float:
    """L / sqrt(U): the integral of cos(pi (sqrt(U) x / L)^2 - pi/4) over the real line."""
    if not U > 0:
        raise ValueError(f"U must be positive, got {U}")
    return L / math.sqrt(U)


def chirp_integral(U: float, L: float = 1.0, half_window: float = None, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Numerical check of :func:`effective_width`.

    Quadrature over ``[-half_window, half_window]`` plus the two tails written
    with Fresnel integrals.
    """
    a = math.pi * U / L**2
    X = 10.0 * L / math.sqrt(U) if half_window is None else half_window
    # Each period spans at most 2*pi/(2 a X) near the window edge; seed that many panels.
    panels = max(16, int(a * X * X / math.pi) + 1)
    core = integrate_complex(lambda x: np.cos(a * x * x - math.pi / 4.0), -X, X, spec, min_panels=panels).real
    S, C = special.fresnel(X * math.sqrt(2.0 * a / math.pi))
    tail = 0.5 * math.sqrt(math.pi / a) * (1.0 - C - S)
    return core + 2.0 * tail


def density_profile(state: PlusState, scenario: Scenario, x, at_time: bool = True) -> dict:
    """Exact, envelope and approximate densities sampled at ``x``.

    With ``at_time=False`` every column holds the initial |psi+(x)|**2.
    """
    x = np.asarray(x, dtype=float)
    if at_time:
        exact = interference_pattern_density(state, scenario, x)
        env = envelope_density(state, scenario, x)
        approx = approximate_pattern_density(state, scenario, x)
    else:
        exact = np.abs(state.wavefunction.evaluate(x)) ** 2
        env = (state.normalization * (np.abs(state.phiL.evaluate(x)) + np.abs(state.phiB.evaluate(x)))) ** 2
        approx = exact
    return {"x": x, "density_exact": exact, "density_envelope": env, "density_approx": approx}


def write_density_csv(target, profile: dict, reference_level: float = None, fmt: str = ".8e") -> None:
    """Write the profile columns (plus a constant ``reference_level`` column if given) to a path or text file."""
    columns = ["x", "density_exact", "density_envelope", "density_approx"]
    if reference_level is not None:
        columns.append("reference_level")
    if hasattr(target, "write"):
        _write_density_rows(target, profile, columns, reference_level, fmt)
        return
    with open(target, "w", newline="") as fh:
        _write_density_rows(fh, profile, columns, reference_level, fmt)


def _write_density_rows(fh, profile, columns, reference_level, fmt):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(columns)
    for i in range(len(profile["x"])):
        row = [format(float(profile[c][i]), fmt) for c in columns[:4]]
        if reference_level is not None:
            row.append(format(reference_level, fmt))
        writer.writerow(row)
