"""Defect probability, closed-form bounds, violation ratios and the (U, |C|^2) sweep."""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import ApproximationDomainError, NoViolationError
from .localization import (
    RECTANGLE_COEFFICIENTS,
    LocalizationCoefficients,
    gaussian_coefficients,
    gaussian_eta,
    gaussian_gamma,
    localization_coefficients,
)
from .numerics import DEFAULT_SPEC, QuadratureSpec
from .propagation import probability_M_envelope, probability_M_envelope_exact, probability_M_exact
from .scenario import Scenario
from .superposition import PlusState, joint_lower_bound_formula, plus_interval_probability
from .wavefunction import Gaussian, Rectangle

FAMILIES = ("gaussian", "rectangle")
MAX_SWEEP_U = 0.12
THREADS_ENV = "PPDEFECT_THREADS"


def defect_bound(csq, eta, gamma, U):
    """Lower bound ((2 gamma - 1) |C|^2 sqrt(U) - 3 |C|^2 U - eta) / (1 + |C|^2 sqrt(U))."""
    s = csq * np.sqrt(U)
    return ((2.0 * gamma - 1.0) * s - 3.0 * csq * U - eta) / (1.0 + s)


def rect_defect_bound(U):
    s = np.sqrt(U)
    return s / (1.0 + s) * (1.0 - 3.0 * s)


def gaussian_defect_bound(csq, U):
    """Bound for the Gaussian family; broadcasts over ``csq`` and ``U``."""
    return defect_bound(csq, gaussian_eta(csq), gaussian_gamma(csq), U)


def rect_optimum(xatol: float = 1e-10):
    """(U*, value) maximizing :func:`rect_defect_bound` on (0, 1/9)."""
    res = optimize.minimize_scalar(
        lambda u: -rect_defect_bound(u), bounds=(1e-8, 1.0 / 9.0), method="bounded", options={"xatol": xatol}
    )
    return float(res.x), float(-res.fun)


def ratio_bound(csq, eta, gamma, U):
    """Envelope estimate of P(M) over the coefficient estimate of P(L) + P(B) - 1."""
    s = csq * math.sqrt(U)
    denom = csq * U + (2.0 * gamma - 1.0) * s - eta
    if not denom > 0:
        raise NoViolationError(f"joint lower bound estimate {denom:.3g} is not positive; the ratio is undefined")
    return 4.0 * csq * U / denom


def very_localized_probability(csq: float, U: float) -> float:
    """(1 + |C|^2 sqrt(U)) / 2, valid only while |C|^2 sqrt(U) is small."""
    s = csq * math.sqrt(U)
    if not s < 0.2:
        raise ApproximationDomainError(f"|C|^2 sqrt(U) = {s:.3g} is outside the small-overlap regime (< 0.2)")
    return 0.5 * (1.0 + s)


@dataclass(frozen=True)
class ProbabilityReport:
    """Exact probabilities for a plus state, with formula estimates alongside.

    ``p_m_envelope`` is the integrated envelope and ``ratio`` its ratio to the
    exact joint lower bound.  Fields ending in ``_estimate`` or ``_bound`` come
    from the coefficient formulas.
    """

    p_l: float
    p_b: float
    joint_lower: float
    p_m_exact: float
    p_m_envelope: float
    defect_exact: float
    defect_bound: float
    ratio: float
    scenario: Scenario
    coefficients: LocalizationCoefficients
    overlap: float = 0.0
    joint_lower_estimate: float = math.nan
    p_m_envelope_estimate: float = math.nan
    defect_envelope: float = math.nan
    ratio_exact: float = math.nan

    def to_dict(self) -> dict:
        c = self.coefficients
        return {
            "U": self.scenario.U,
            "sqrt_U": self.scenario.sqrt_U,
            "L": self.scenario.L,
            "B": self.scenario.B,
            "time": self.scenario.time,
            "csq": c.csq,
            "eta": c.mismatch,
            "gamma": c.cross_section,
            "overlap": self.overlap,
            "p_l": self.p_l,
            "p_b": self.p_b,
            "joint_lower": self.joint_lower,
            "joint_lower_estimate": self.joint_lower_estimate,
            "p_m_exact": self.p_m_exact,
            "p_m_envelope": self.p_m_envelope,
            "p_m_envelope_estimate": self.p_m_envelope_estimate,
            "defect_exact": self.defect_exact,
            "defect_envelope": self.defect_envelope,
            "defect_bound": self.defect_bound,
            "ratio": self.ratio,
            "ratio_exact": self.ratio_exact,
        }


def _default_coefficients(state: PlusState, scenario: Scenario, spec) -> LocalizationCoefficients:
    phiL = state.phiL
    if isinstance(phiL, Gaussian) and phiL.center == 0 and phiL.kick == 0 and phiL.chirp == 0:
        return gaussian_coefficients(math.sqrt(8.0 * math.pi) * phiL.sigma / scenario.L)
    if (
        isinstance(phiL, Rectangle)
        and phiL.width == scenario.L
        and phiL.center == 0
        and phiL.elapsed == 0
        and phiL.support in (None, phiL.representation)
    ):
        return RECTANGLE_COEFFICIENTS
    return localization_coefficients(phiL, scenario.L, spec)


def defect_exact(
    state: PlusState,
    scenario: Scenario,
    coefficients: LocalizationCoefficients = None,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ProbabilityReport:
    """Full report: quadrature for P(L), P(B) and P(M); formulas for the bounds."""
    if coefficients is None:
        coefficients = _default_coefficients(state, scenario, spec)
    p_l = plus_interval_probability(state, scenario, "L", spec)
    p_b = plus_interval_probability(state, scenario, "B", spec)
    joint = p_l + p_b - 1.0
    pm = probability_M_exact(state, scenario, spec)
    env = probability_M_envelope_exact(state, scenario, spec)
    c = coefficients
    U = scenario.U
    return ProbabilityReport(
        p_l=p_l,
        p_b=p_b,
        joint_lower=joint,
        p_m_exact=pm,
        p_m_envelope=env,
        defect_exact=joint - pm,
        defect_bound=float(defect_bound(c.csq, c.mismatch, c.cross_section, U)),
        ratio=env / joint if joint > 0 else math.nan,
        scenario=scenario,
        coefficients=c,
        overlap=state.overlap,
        joint_lower_estimate=float(joint_lower_bound_formula(c.csq, c.mismatch, c.cross_section, U)),
        p_m_envelope_estimate=float(probability_M_envelope(c.csq, U)),
        defect_envelope=joint - env,
        ratio_exact=pm / joint if joint > 0 else math.nan,
    )


@dataclass(frozen=True)
class SweepGrid:
    """Defect bound on a (U, |C|^2) grid; ``defect_bound[i, j]`` belongs to (u_values[i], csq_values[j]).

    ``optimum`` is the grid maximum.  ``refined`` is the local optimum after
    coordinate refinement from that cell, or None.
    """

    u_values: np.ndarray
    csq_values: np.ndarray
    defect_bound: np.ndarray
    optimum: tuple
    family: str = "gaussian"
    refined: tuple = None
    zero_contour: list = field(default_factory=list)

    def __post_init__(self):
        shape = (len(self.u_values), len(self.csq_values))
        if self.defect_bound.shape != shape:
            raise ValueError(f"matrix shape {self.defect_bound.shape} does not match axes {shape}")


def _axis(rng, name):
    lo, hi, steps = rng
    steps = int(steps)
    if steps < 1:
        raise ValueError(f"{name} steps must be at least 1")
    if not (lo > 0 and hi >= lo):
        raise ValueError(f"{name} range must be positive with lo <= hi, got ({lo}, {hi})")
    if steps == 1:
        return np.array([float(lo)])
    return np.linspace(lo, hi, steps)


def _worker_count(workers):
    if workers is None:
        workers = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(workers))


def _bound_function(family):
    if family == "gaussian":
        return gaussian_defect_bound
    return lambda csq, U: rect_defect_bound(U) + 0.0 * np.asarray(csq)


def _refine(func, u0, c0, u_bounds, c_bounds, tol=1e-4, max_rounds=50):
    """Alternating one-dimensional maximization on each axis, to ``tol``."""
    u, c = u0, c0

    def argmax(f, bounds, x0):
        if bounds[1] - bounds[0] <= tol:
            return x0
        res = optimize.minimize_scalar(lambda z: -f(z), bounds=bounds, method="bounded", options={"xatol": tol / 10})
        return float(res.x) if -res.fun >= f(x0) else x0

    for _ in range(max_rounds):
        u_new = argmax(lambda z: float(func(c, z)), u_bounds, u)
        c_new = argmax(lambda z: float(func(z, u_new)), c_bounds, c)
        done = abs(u_new - u) < tol and abs(c_new - c) < tol
        u, c = u_new, c_new
        if done:
            break
    return u, c, float(func(c, u))


def _gaussian_zero_crossing(U, lo, hi):
    """Csq in [lo, hi] where the Gaussian bound at ``U`` changes sign, or None."""
    f = lambda c: float(gaussian_defect_bound(c, U))
    if f(lo) * f(hi) > 0:
        return None
    return optimize.brentq(f, lo, hi, xtol=1e-12)


def zero_contour(grid: SweepGrid) -> list:
    """Points (U, Csq) of the boundary of the violation region.

    For the Gaussian family: per grid U, the upper crossing of zero along the
    Csq axis, polished with a root finder on the closed form.  For the
    rectangle family: the single crossing along U, if it lies in range.
    """
    if grid.family == "rectangle":
        u = grid.u_values
        vals = grid.defect_bound[:, 0]
        idx = np.nonzero(np.diff(np.sign(vals)) != 0)[0]
        pts = []
        for i in idx:
            root = optimize.brentq(lambda z: float(rect_defect_bound(z)), u[i], u[i + 1], xtol=1e-14)
            pts.append((root, float(grid.csq_values[0])))
        return pts
    pts = []
    c = grid.csq_values
    for i, U in enumerate(grid.u_values):
        row = grid.defect_bound[i]
        sign_changes = np.nonzero((row[:-1] > 0) & (row[1:] <= 0))[0]
        if len(sign_changes):
            j = sign_changes[-1]
            pts.append((float(U), _gaussian_zero_crossing(U, c[j], c[j + 1])))
    return pts


def sweep(
    u_range=(0.005, 0.05, 200),
    csq_range=(0.3, 1.3, 200),
    family: str = "gaussian",
    workers: int = None,
    refine: bool = True,
) -> SweepGrid:
    """Evaluate the defect bound on a rectangular grid and locate its maximum.

    Rows (one per U) are computed independently; with several workers they run
    on a thread pool but are assembled in grid order, so results do not depend
    on the worker count.  The worker count defaults to ``$PPDEFECT_THREADS``.
    The rectangle family has no Csq axis and uses a single column at 1.
    """
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    u = _axis(u_range, "U")
    if u[-1] > MAX_SWEEP_U:
        raise ValueError(f"U values must lie in (0, {MAX_SWEEP_U}]")
    c = _axis(csq_range, "Csq") if family == "gaussian" else np.array([1.0])
    func = _bound_function(family)

    def row(U):
        return np.asarray(func(c, U), dtype=float)

    n = _worker_count(workers)
    if n == 1:
        rows = [row(U) for U in u]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(row, u))
    matrix = np.vstack(rows)

    i, j = np.unravel_index(int(np.argmax(matrix)), matrix.shape)
    optimum = (float(u[i]), float(c[j]), float(matrix[i, j]))
    refined = None
    if refine and matrix.size > 1:
        u_b = (float(u[max(i - 1, 0)]), float(u[min(i + 1, len(u) - 1)]))
        c_b = (float(c[max(j - 1, 0)]), float(c[min(j + 1, len(c) - 1)]))
        refined = _refine(func, optimum[0], optimum[1], u_b, c_b)
    grid = SweepGrid(u, c, matrix, optimum, family, refined)
    object.__setattr__(grid, "zero_contour", zero_contour(grid))
    return grid


def write_sweep_csv(path, grid: SweepGrid, fmt: str = ".8e") -> None:
    """Rows ``U,Csq,defect_bound`` with U as the outer loop."""
    with open(path, "w") as fh:
        fh.write("U,Csq,defect_bound\n")
        for i, U in enumerate(grid.u_values):
            for j, c in enumerate(grid.csq_values):
                fh.write(f"{format(U, fmt)},{format(c, fmt)},{format(grid.defect_bound[i, j], fmt)}\n")


def _fmt_float(x, fmt):
    return float(format(x, fmt))


def sweep_summary(grid: SweepGrid, fmt: str = ".8e") -> dict:
    f = lambda x: _fmt_float(x, fmt)
    out = {
        "family": grid.family,
        "shape": list(grid.defect_bound.shape),
        "optimum": {"U": f(grid.optimum[0]), "Csq": f(grid.optimum[1]), "value": f(grid.optimum[2])},
        "zero_contour_samples": [{"U": f(u), "Csq": f(c)} for u, c in grid.zero_contour],
    }
    if grid.refined is not None:
        out["refined_optimum"] = {"U": f(grid.refined[0]), "Csq": f(grid.refined[1]), "value": f(grid.refined[2])}
    return out


def write_sweep_json(path, grid: SweepGrid, fmt: str = ".8e") -> None:
    with open(path, "w") as fh:
        json.dump(sweep_summary(grid, fmt), fh, indent=2)
        fh.write("\n")
