import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ppdefect.errors import DegenerateStateError
from ppdefect.localization import (
    RECTANGLE_COEFFICIENTS,
    LocalizationCoefficients,
    coherent_cross_section,
    coherent_spread,
    cross_probability,
    csq_from_sigma,
    gaussian_coefficients,
    gaussian_component,
    gaussian_eta,
    gaussian_gamma,
    gaussian_sigmas,
    localization_coefficients,
    single_component_joint,
    statistical_mismatch,
)
from ppdefect.wavefunction import MOMENTUM, Gaussian, Rectangle, Superposition


@pytest.mark.parametrize("csq", [0.05, 0.3, 0.8, 1.0, 1.3, 2.0])
def test_closed_form_vs_quadrature(csq):
    closed = gaussian_coefficients(csq)
    quad = localization_coefficients(gaussian_component(csq))
    assert abs(closed.csq - quad.csq) < 1e-8
    assert abs(closed.mismatch - quad.mismatch) < 1e-8
    assert abs(closed.cross_section - quad.cross_section) < 1e-8


def test_component_is_normalized_and_has_requested_spread():
    for csq in (0.2, 0.8, 1.5):
        g = gaussian_component(csq)
        assert g.norm_squared() == pytest.approx(1.0, abs=1e-14)
        assert abs(coherent_spread(g)) ** 2 == pytest.approx(csq, rel=1e-10)


def test_rectangle_coefficients():
    q = localization_coefficients(Rectangle(1.0))
    assert q.csq == pytest.approx(1.0, abs=1e-12)
    assert q.mismatch == pytest.approx(0.0, abs=1e-12)
    assert q.cross_section == pytest.approx(1.0, abs=1e-12)
    assert RECTANGLE_COEFFICIENTS.coherent_mismatch == 0.0


def test_shifted_rectangle_loses_overlap():
    r = Rectangle(1.0, center=0.25)
    c = localization_coefficients(r)
    assert c.mismatch == pytest.approx(0.25, abs=1e-12)
    assert c.cross_section == pytest.approx(0.75, abs=1e-12)


@settings(deadline=None, max_examples=30)
@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0))
def test_monotone_in_spread(a, b):
    lo, hi = sorted((a, b))
    assert gaussian_eta(lo) <= gaussian_eta(hi)
    assert gaussian_gamma(lo) >= gaussian_gamma(hi)


def test_vectorized_closed_forms():
    c = np.array([0.5, 0.8, 1.0])
    assert np.allclose(gaussian_eta(c), [gaussian_eta(float(v)) for v in c])
    assert np.allclose(gaussian_gamma(c), [gaussian_gamma(float(v)) for v in c])


def test_sigmas_roundtrip():
    s1, s2 = gaussian_sigmas(0.8, 0.022)
    assert csq_from_sigma(s1) == pytest.approx(0.8)
    assert 4 * math.pi * 0.022 * s1 * s2 == pytest.approx(1.0)
    assert s1 == pytest.approx(0.1596, abs=1e-4)
    assert s2 == pytest.approx(22.667, abs=1e-3)


def test_complex_spread_keeps_squared_magnitude():
    g = Gaussian(0.2, amplitude=Gaussian(0.2).amplitude * 1j)
    c = coherent_spread(g)
    assert abs(c.imag) > 0
    assert abs(c) ** 2 == pytest.approx(csq_from_sigma(0.2), rel=1e-10)
    assert coherent_cross_section(g) == pytest.approx(gaussian_gamma(csq_from_sigma(0.2)), abs=1e-10)


def test_degenerate_cross_section():
    odd = Superposition(((1.0, Gaussian(0.1, center=-0.2)), (-1.0, Gaussian(0.1, center=0.2))))
    with pytest.raises(DegenerateStateError):
        coherent_cross_section(odd)


def test_requires_position_representation():
    with pytest.raises(ValueError):
        statistical_mismatch(Gaussian(1.0, representation=MOMENTUM))


def test_validation():
    with pytest.raises(ValueError):
        gaussian_coefficients(0.0)
    with pytest.raises(ValueError):
        LocalizationCoefficients(1.0, 1.5, 1.0)


def test_small_u_helpers():
    c = gaussian_coefficients(0.8)
    assert cross_probability(0.8, 0.02) == pytest.approx(0.016)
    assert single_component_joint(c, 0.02) == pytest.approx(0.016 - c.mismatch)
