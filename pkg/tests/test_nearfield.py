import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, special

from freecoupling.errors import DomainError
from freecoupling.nearfield import (
    gaussian_field_averages,
    gaussian_intensity_factor,
    intensity_factor,
    scaled_intensity_factor,
)
from freecoupling.physics import electron_from_beta, evanescent_scales


def scales(beta, lam=1.0):
    return evanescent_scales(electron_from_beta(beta), lam)


def test_example_value():
    sc = scales(1 / math.sqrt(2))
    rho = 1.0 / sc.k
    expected = special.k0(1.0) ** 2 + 2 * special.k1(1.0) ** 2
    assert intensity_factor(sc, rho) == pytest.approx(expected, rel=1e-13)
    assert expected == pytest.approx(0.9018, abs=1e-4)


@given(st.floats(0.02, 0.98), st.floats(1e-3, 3.0))
def test_positive_and_decreasing(beta, rho):
    sc = scales(beta)
    rho = min(rho, 300.0 / sc.alpha_e)
    f1 = intensity_factor(sc, rho)
    f2 = intensity_factor(sc, rho * 1.01)
    assert f1 > 0.0
    assert f2 < f1


@given(st.floats(0.02, 0.98), st.floats(1e-3, 5.0), st.floats(0.0, 5.0))
def test_scaled_form(beta, rho, shift):
    sc = scales(beta)
    rho = min(rho, 300.0 / sc.alpha_e)
    shift = min(shift, 100.0 / sc.alpha_e)
    ref = intensity_factor(sc, rho) * math.exp(2 * sc.alpha_e * shift)
    assert scaled_intensity_factor(sc, rho, shift) == pytest.approx(ref, rel=1e-11, abs=1e-300)


def test_domain():
    with pytest.raises(DomainError):
        intensity_factor(scales(0.5), 0.0)
    with pytest.raises(DomainError):
        gaussian_field_averages(scales(0.5), -1.0, 0.1)


def _polar_oracle(sc, sigma, R):
    # Average over the beam in polar coordinates centred on the field point,
    # where s K0(alpha s) and s K1(alpha s) are regular.
    a = sc.alpha_e
    dens = lambda x, y: 2 / (math.pi * sigma**2) * math.exp(-2 * (x * x + y * y) / sigma**2)
    smax = R + 7 * sigma
    s0 = integrate.dblquad(lambda s, t: dens(R + s * math.cos(t), s * math.sin(t)) * special.k0(a * s) * s,
                           0, 2 * math.pi, 0, smax, epsabs=1e-13, epsrel=1e-10)[0]
    with warnings.catch_warnings():
        # The radial component vanishes by symmetry for R = 0; quadpack flags roundoff there.
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        v = integrate.dblquad(lambda s, t: -math.cos(t) * dens(R + s * math.cos(t), s * math.sin(t)) * special.k1(a * s) * s,
                              0, 2 * math.pi, 0, smax, epsabs=1e-13, epsrel=1e-10)[0]
    return s0, v


@pytest.mark.parametrize("beta, sigma, R", [(0.3, 0.01, 0.03), (0.6, 0.05, 0.02), (0.9, 0.02, 0.0), (0.2, 0.01, 0.01)])
def test_gaussian_average_matches_2d_oracle(beta, sigma, R):
    sc = scales(beta)
    s0, v = gaussian_field_averages(sc, sigma, R)
    r0, rv = _polar_oracle(sc, sigma, R)
    assert s0 == pytest.approx(r0, rel=1e-7)
    assert v == pytest.approx(rv, rel=1e-6, abs=1e-9)


@pytest.mark.parametrize("beta", [0.1, 0.5, 0.9])
def test_gaussian_reduces_to_point(beta):
    sc = scales(beta)
    R = 0.05
    assert gaussian_intensity_factor(sc, 1e-5, R) == pytest.approx(intensity_factor(sc, R), rel=1e-6)


def test_gaussian_far_from_beam_is_point_like():
    sc = scales(0.4)
    sigma, R = 0.005, 0.1
    # Outside the beam the average of K0 equals K0 times the mean of I0 over the beam.
    ratio = gaussian_intensity_factor(sc, sigma, R) / intensity_factor(sc, R)
    assert 1.0 < ratio < 1.01


def test_gaussian_accepts_vector_position_and_shift():
    sc = scales(0.5)
    a = gaussian_intensity_factor(sc, 0.01, (0.03, 0.04))
    b = gaussian_intensity_factor(sc, 0.01, 0.05)
    assert a == pytest.approx(b, rel=1e-14)
    c = gaussian_intensity_factor(sc, 0.01, 0.05, shift=0.05)
    assert c == pytest.approx(b * math.exp(2 * sc.alpha_e * 0.05), rel=1e-10)


def test_intensity_scale_invariance():
    for s in (0.5, 2.0, 10.0):
        a = intensity_factor(scales(0.3, 1.0), 0.04)
        b = intensity_factor(scales(0.3, s), 0.04 * s)
        assert b == pytest.approx(a, rel=1e-13)
