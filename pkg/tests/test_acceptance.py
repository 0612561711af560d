"""Acceptance criteria, each checked at its stated tolerance.

Every criterion returns a list of named checks.  Under pytest a summary line
per criterion is printed at the end of the session; running this file
directly prints the same lines.
"""

import math
import sys

import numpy as np
import pytest

from ppdefect.analysis import (
    defect_exact,
    gaussian_defect_bound,
    ratio_bound,
    rect_optimum,
    sweep,
)
from ppdefect.localization import gaussian_coefficients, gaussian_component, localization_coefficients
from ppdefect.numerics import erf, integrate_real
from ppdefect.propagation import (
    chirp_integral,
    effective_width,
    probability_M_envelope,
    probability_M_envelope_exact,
    probability_M_exact,
    propagate_plus_state,
    scaled_pattern,
)
from ppdefect.superposition import (
    gaussian_plus_state,
    joint_lower_bound_formula,
    plus_interval_probability,
    plus_interval_probability_formula,
    plus_state_from_sigmas,
    uncertainty_bound_check,
)
from ppdefect.wavefunction import Grid, l2_distance, norm_squared, sample


def check(name, value, target, tol):
    return (f"{name} = {value:.7g} (target {target} +- {tol:g})", abs(value - target) <= tol)


def _optimum_report():
    state, sc = plus_state_from_sigmas(0.16, 22.67)
    return defect_exact(state, sc)


_CACHE = {}


def cached(key, fn):
    if key not in _CACHE:
        _CACHE[key] = fn()
    return _CACHE[key]


def criterion_1():
    r = cached("report", _optimum_report)
    return [
        check("P(L)+P(B)-1", r.joint_lower, 0.114569, 1e-5),
        check("U", r.scenario.U, 0.021939, 1e-6),
        check("sqrt(U)", r.scenario.sqrt_U, 0.148118, 1e-6),
    ]


def criterion_2():
    r = cached("report", _optimum_report)
    return [
        check("envelope P(M)", r.p_m_envelope, 0.0628944, 1e-5),
        (f"P(M) exact {r.p_m_exact:.7g} <= envelope", r.p_m_exact <= r.p_m_envelope),
        check("envelope defect", r.defect_envelope, 0.0516746, 2e-5),
    ]


def criterion_3():
    r = cached("report", _optimum_report)
    return [
        check("P(M) exact", r.p_m_exact, 0.054, 0.002),
        check("defect exact", r.defect_exact, 0.061, 0.002),
    ]


def criterion_4():
    U, value = rect_optimum()
    return [check("rectangle argmax U", U, 0.024, 0.001), check("rectangle max defect", value, 0.072, 0.001)]


def criterion_5():
    c1, c8 = gaussian_coefficients(1.0), gaussian_coefficients(0.8)
    out = [
        check("eta(1)", c1.mismatch, 0.01219, 1e-5),
        check("gamma(1)", c1.cross_section, 0.9237, 1e-4),
        check("eta(0.8)", c8.mismatch, 0.0017, 1e-4),
        check("gamma(0.8)", c8.cross_section, 0.9733, 1e-4),
    ]
    worst = 0.0
    for csq in (0.3, 0.8, 1.0, 1.3):
        closed = gaussian_coefficients(csq)
        quad = localization_coefficients(gaussian_component(csq))
        worst = max(
            worst,
            abs(closed.csq - quad.csq),
            abs(closed.mismatch - quad.mismatch),
            abs(closed.cross_section - quad.cross_section),
        )
    out.append((f"closed form vs quadrature max diff {worst:.2e} < 1e-8", worst < 1e-8))
    return out


def _sweep_grid():
    return sweep((0.005, 0.05, 200), (0.3, 1.3, 200))


def criterion_6():
    g = cached("sweep", _sweep_grid)
    U, csq, value = g.optimum
    out = [
        check("optimum U", U, 0.022, 0.002),
        check("optimum Csq", csq, 0.80, 0.05),
        check("optimum value", value, 0.052, 0.001),
    ]
    # Plateau: the bound over the whole box [0.7, 0.9] x [0.015, 0.03].
    cs = np.linspace(0.7, 0.9, 201)
    us = np.linspace(0.015, 0.03, 201)
    box = gaussian_defect_bound(cs[None, :], us[:, None])
    i, j = np.unravel_index(np.argmin(box), box.shape)
    out.append(
        (
            f"plateau min defect_bound {box[i, j]:.5f} at (Csq={cs[j]:.3f}, U={us[i]:.4f}) >= 0.05",
            bool(box.min() >= 0.05),
        )
    )
    crossing = min(g.zero_contour, key=lambda p: abs(p[0] - U))
    out.append(
        (f"zero contour Csq {crossing[1]:.5f} at U={crossing[0]:.5f} in [1.245, 1.30]", 1.245 <= crossing[1] <= 1.30)
    )
    return out


def criterion_7():
    # The optimized case is the stated operating point (|C|^2 = 0.8, U = 0.022),
    # equivalently the sigma pair of criterion 1.
    c = gaussian_coefficients(0.8)
    ratio = ratio_bound(0.8, c.mismatch, c.cross_section, 0.022)
    r = cached("report", _optimum_report)
    ideal = ratio_bound(1.0, 0.0, 1.0, 1.0 / 9.0)
    s = math.sqrt(1.0 / 9.0)
    return [
        (f"ratio bound at (0.8, 0.022) {ratio:.6f} < 0.55", ratio < 0.55),
        check("ratio bound at (0.8, 0.022)", ratio, 0.549, 0.003),
        (f"envelope ratio of the exact state {r.ratio:.6f} < 0.55", r.ratio < 0.55),
        check("envelope ratio of the exact state", r.ratio, 0.549, 0.003),
        (f"ideal ratio at U=1/9 = {ideal!r} == 1", ideal == 1.0 and 4 * s / (1 + s) == 1.0),
        (f"pattern amplitude at U=1/9 = {float(scaled_pattern(1 / 9, 1.5))!r} == 1", scaled_pattern(1 / 9, 1.5) == 1.0),
    ]


def criterion_8():
    out = []
    states = [
        gaussian_plus_state(csq, U)
        for csq in np.linspace(0.3, 1.3, 6)
        for U in np.linspace(0.005, 0.05, 6)
    ]

    drift = max(abs(norm_squared(propagate_plus_state(s, sc).amplitude) - 1.0) for s, sc in states)
    state, sc = states[14]
    grid = sample(state.wavefunction, 2**16, half_width=600.0)
    evolved = grid.propagated(sc.time)
    drift_grid = abs(evolved.norm_squared() - grid.norm_squared())
    out.append((f"unitarity: analytic drift {drift:.1e}, grid drift {drift_grid:.1e} < 1e-8", max(drift, drift_grid) < 1e-8))
    dist2 = l2_distance(evolved, propagate_plus_state(state, sc).amplitude) ** 2
    out.append((f"analytic vs spectral grid propagation {dist2:.1e} < 1e-6 L^2", dist2 < 1e-6))

    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(20):
        x = (np.arange(1024) - 512) * 0.05
        psi = sum(
            complex(*rng.normal(size=2)) * np.exp(-((x - rng.uniform(-8, 8)) ** 2) + 1j * rng.uniform(-5, 5) * x)
            for _ in range(3)
        )
        g = Grid(psi, 0.05, x[0])
        worst = max(worst, abs(g.fourier_transform().norm_squared() - g.norm_squared()) / g.norm_squared())
    out.append((f"Parseval relative error {worst:.1e} < 1e-9", worst < 1e-9))

    dens = lambda t: 2 / math.sqrt(math.pi) * np.exp(-t * t)
    erf_err = max(abs(integrate_real(dens, 0.0, z) - erf(z)) for z in np.linspace(0.05, 5, 40))
    out.append((f"quadrature vs erf {erf_err:.1e} < 1e-10", erf_err < 1e-10))

    formula_err = 0.0
    bound_ok = True
    order_ok = True
    for s, sc in states:
        csq = math.sqrt(8 * math.pi) * s.phiL.sigma
        c = gaussian_coefficients(csq)
        pl = plus_interval_probability(s, sc, "L")
        pb = plus_interval_probability(s, sc, "B")
        formula_err = max(
            formula_err,
            abs(pl - plus_interval_probability_formula(csq, c.mismatch, c.cross_section, sc.U)),
            abs(pl + pb - 1 - joint_lower_bound_formula(csq, c.mismatch, c.cross_section, sc.U)),
            abs(probability_M_envelope_exact(s, sc) - probability_M_envelope(csq, sc.U)),
        )
        bound_ok &= uncertainty_bound_check(pl, pb, sc.U)
        order_ok &= probability_M_exact(s, sc) <= probability_M_envelope_exact(s, sc)
    out.append((f"coefficient formulas vs exact max diff {formula_err:.1e} < 0.005 (U <= 0.05)", formula_err < 0.005))
    out.append((f"uncertainty bound P(L)+P(B) <= 1+sqrt(U) on {len(states)} states", bool(bound_ok)))
    out.append((f"P(M) exact <= envelope on {len(states)} sweep scenarios", bool(order_ok)))
    return out


def criterion_9():
    w = effective_width(0.022)
    q = chirp_integral(0.022)
    return [
        check("L/sqrt(U) at U=0.022", w, 6.742, 1e-3),
        check("chirp integral at U=0.022", q, 6.742, 1e-3),
        (f"width / 2L = {w / 2:.3f} > 3", w / 2 > 3),
    ]


CRITERIA = {
    1: ("exact Gaussian scenario", criterion_1),
    2: ("envelope bound and defect", criterion_2),
    3: ("fully exact P(M) and defect", criterion_3),
    4: ("rectangle optimum", criterion_4),
    5: ("Gaussian closed-form coefficients", criterion_5),
    6: ("sweep optimum, plateau, zero contour", criterion_6),
    7: ("violation ratio", criterion_7),
    8: ("property suite", criterion_8),
    9: ("effective interference width", criterion_9),
}


def evaluate(number):
    title, fn = CRITERIA[number]
    checks = fn()
    passed = all(ok for _, ok in checks)
    failed = [msg for msg, ok in checks if not ok]
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} [{title}]"
    if failed:
        line += " failing: " + "; ".join(failed)
    return passed, line, checks


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    passed, line, checks = evaluate(number)
    acceptance_log.append(line)
    print(line)
    for msg, ok in checks:
        print(f"    {'ok  ' if ok else 'FAIL'} {msg}")
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for passed, line, checks in results:
        print(line)
        for msg, ok in checks:
            print(f"    {'ok  ' if ok else 'FAIL'} {msg}")
    sys.exit(0 if all(r[0] for r in results) else 1)
