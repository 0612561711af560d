import math

import pytest

from ppdefect.scenario import Scenario


def test_unit_convention():
    s = Scenario(U=0.022)
    assert s.B == pytest.approx(2 * math.pi * 0.022, rel=1e-15)
    assert s.time == pytest.approx(1 / (2 * math.pi * 0.022), rel=1e-15)
    assert s.reduced_time == s.time
    assert s.sqrt_U == pytest.approx(math.sqrt(0.022))


def test_from_widths_roundtrip():
    s = Scenario(U=0.03, L=2.0, mass=3.0)
    t = Scenario.from_widths(s.L, s.B, mass=3.0)
    assert t.U == pytest.approx(0.03, rel=1e-14)
    assert s.time == pytest.approx(3.0 * 2.0 / s.B)
    assert s.reduced_time == pytest.approx(s.time / 3.0)


def test_from_sigmas():
    s = Scenario.from_sigmas(0.16, 22.67)
    assert s.U == pytest.approx(1 / (4 * math.pi * 0.16 * 22.67), rel=1e-15)


@pytest.mark.parametrize("kwargs", [{"U": 0}, {"U": 1.0}, {"U": -0.1}, {"U": 0.1, "L": 0}, {"U": 0.1, "mass": -1}])
def test_validation(kwargs):
    with pytest.raises(ValueError):
        Scenario(**kwargs)


def test_sigma_validation():
    with pytest.raises(ValueError):
        Scenario.from_sigmas(0.0, 1.0)
