import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ppdefect.errors import AccuracyError
from ppdefect.numerics import (
    DEFAULT_SPEC,
    QuadratureSpec,
    erf,
    erfc,
    integrate_complex,
    integrate_complex_result,
    integrate_real,
)


def gaussian_density(t):
    return 2.0 / math.sqrt(math.pi) * np.exp(-t * t)


@pytest.mark.parametrize("z", [1e-3, 0.1, 0.5, 1.0, math.sqrt(math.pi / 2), 2.0, 3.5])
def test_quadrature_matches_erf(z):
    assert abs(integrate_real(gaussian_density, 0.0, z) - erf(z)) < 1e-10


@given(st.floats(0.0, 5.0))
def test_quadrature_erf_oracle_property(z):
    assert abs(integrate_real(gaussian_density, 0.0, z) - erf(z)) < 1e-10


def test_erf_scalar_and_array_paths_agree():
    z = np.linspace(-4, 4, 33)
    arr = erf(z)
    assert isinstance(erf(0.3), float)
    assert np.allclose(arr, [erf(float(v)) for v in z], atol=1e-15, rtol=0)
    assert np.allclose(erfc(z), 1.0 - arr, atol=1e-15)


def test_complex_integrand():
    # int_0^1 exp(i k x) dx = (exp(ik) - 1) / (ik)
    k = 7.3
    exact = (np.exp(1j * k) - 1) / (1j * k)
    assert abs(integrate_complex(lambda x: np.exp(1j * k * x), 0.0, 1.0) - exact) < 1e-12


def test_scalar_only_integrand():
    # math.cos rejects arrays; the integrator must fall back to a loop.
    assert abs(integrate_real(lambda x: math.cos(x), 0.0, math.pi / 2) - 1.0) < 1e-12


def test_oscillatory_chirp_with_panels():
    # Fresnel cosine integral C(z) = int_0^z cos(pi t^2 / 2) dt
    from scipy.special import fresnel

    z = 12.0
    val = integrate_real(lambda t: np.cos(0.5 * math.pi * t * t), 0.0, z, min_panels=32)
    assert abs(val - fresnel(z)[1]) < 1e-10


def test_breakpoints_handle_kink():
    val = integrate_real(np.abs, -1.0, 2.0, points=(0.0,))
    assert abs(val - 2.5) < 1e-13


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=8), st.floats(-2, 0), st.floats(0.01, 2))
def test_polynomials_are_exact(coeffs, a, width):
    b = a + width
    p = np.polynomial.Polynomial(coeffs)
    exact = p.integ()(b) - p.integ()(a)
    assert abs(integrate_real(p, a, b) - exact) <= 1e-12 * max(1.0, abs(exact), sum(map(abs, coeffs)))


def test_empty_interval_and_invalid_limits():
    assert integrate_complex(np.exp, 1.0, 1.0) == 0
    with pytest.raises(ValueError):
        integrate_complex(np.exp, 1.0, 0.0)
    with pytest.raises(ValueError):
        integrate_complex(np.exp, 0.0, math.inf)


def test_accuracy_error_carries_estimate():
    spec = QuadratureSpec(abs_tolerance=1e-14, rel_tolerance=1e-14, max_subdivisions=4)
    with pytest.raises(AccuracyError) as info:
        integrate_complex(lambda x: np.sin(200 * x * x), 0.0, 3.0, spec)
    assert info.value.estimate is not None
    assert info.value.error_bound > 0


def test_result_reports_error_and_panels():
    res = integrate_complex_result(np.exp, 0.0, 1.0, min_panels=4)
    assert abs(res.value - (math.e - 1)) < 1e-14
    assert res.error <= DEFAULT_SPEC.abs_tolerance
    assert res.subdivisions >= 4


def test_deterministic():
    f = lambda x: np.cos(40 * x) * np.exp(-x)
    assert integrate_complex(f, 0, 5) == integrate_complex(f, 0, 5)


@pytest.mark.parametrize("kwargs", [{"abs_tolerance": 0}, {"rel_tolerance": -1}, {"max_subdivisions": 0}])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        QuadratureSpec(**kwargs)
