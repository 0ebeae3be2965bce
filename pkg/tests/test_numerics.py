import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from freecoupling.errors import ConvergenceError, DomainError, NoSignChangeError
from freecoupling.numerics import (
    GAUSS_WEIGHTS,
    KRONROD_WEIGHTS,
    NODES,
    QuadratureSpec,
    RootBracket,
    bessel_i,
    bessel_jy,
    bessel_k,
    find_root_bracketed,
    golden_section_maximize,
    integrate_interval,
    integrate_semiinfinite_radial,
    log_bessel_i,
    log_bessel_k,
    sign_change_brackets,
)

mp.mp.dps = 30


def test_rule_weights():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod 15 integrates polynomials up to degree 22 exactly, Gauss 7 up to 13.
    for n in range(23):
        exact = 0.0 if n % 2 else 2.0 / (n + 1)
        assert KRONROD_WEIGHTS @ NODES**n == pytest.approx(exact, abs=1e-14)
        if n <= 13:
            assert GAUSS_WEIGHTS @ NODES**n == pytest.approx(exact, abs=1e-14)


@pytest.mark.parametrize("fn, order, x, expected", [
    (bessel_k, 0, 1.0, 0.421024438240708333),
    (bessel_k, 1, 1.0, 0.601907230197234575),
    (bessel_i, 0, 1.0, 1.266065877752008335),
    (bessel_i, 1, 1.0, 0.565159103992485027),
])
def test_bessel_frozen_values(fn, order, x, expected):
    assert fn(order, x) == pytest.approx(expected, rel=1e-14)


def test_bessel_y_frozen():
    assert bessel_jy("Y", 0, 1.0) == pytest.approx(0.088256964215676957, rel=1e-13)
    assert bessel_jy("J", 0, 1.0) == pytest.approx(0.765197686557966552, rel=1e-14)


@given(st.floats(1e-6, 600.0), st.sampled_from([0, 1, 2]))
def test_bessel_k_against_mpmath(x, order):
    ref = float(mp.besselk(order, x))
    assert bessel_k(order, x) == pytest.approx(ref, rel=1e-12)
    assert bessel_k(order, x, scaled=True) == pytest.approx(float(mp.besselk(order, x) * mp.e**x), rel=1e-12)


@given(st.floats(0.0, 600.0), st.sampled_from([0, 1]))
def test_bessel_i_against_mpmath(x, order):
    assert bessel_i(order, x) == pytest.approx(float(mp.besseli(order, x)), rel=1e-12, abs=1e-300)
    assert log_bessel_i(order, max(x, 1e-3)) == pytest.approx(float(mp.log(mp.besseli(order, max(x, 1e-3)))),
                                                              rel=1e-12, abs=1e-12)


@given(st.floats(1e-3, 200.0), st.sampled_from([0, 1]))
def test_bessel_jy_against_mpmath(x, order):
    assert bessel_jy("J", order, x) == pytest.approx(float(mp.besselj(order, x)), rel=1e-9, abs=1e-13)
    assert bessel_jy("Y", order, x) == pytest.approx(float(mp.bessely(order, x)), rel=1e-9, abs=1e-13)


def test_log_bessel_k_large_argument():
    x = 5000.0
    ref = float(mp.log(mp.besselk(0, x)))
    assert log_bessel_k(0, x) == pytest.approx(ref, rel=1e-13)


def test_bessel_wronskian_property():
    x = np.geomspace(1e-3, 50.0, 200)
    w = bessel_i(0, x) * bessel_k(1, x) + bessel_i(1, x) * bessel_k(0, x)
    assert np.allclose(w * x, 1.0, rtol=1e-12)


@pytest.mark.parametrize("fn", [bessel_k, lambda n, x: bessel_jy("Y", n, x)])
def test_bessel_domain(fn):
    with pytest.raises(DomainError):
        fn(0, 0.0)
    with pytest.raises(DomainError):
        fn(1, -1.0)


def test_bessel_i_domain():
    with pytest.raises(DomainError):
        bessel_i(0, -0.5)


def test_quadrature_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(relative_tolerance=0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(relative_tolerance=1e-2)
    with pytest.raises(DomainError):
        QuadratureSpec(max_subdivisions=4)


def test_semiinfinite_k0_squared_moment():
    # integral_0^inf t K0(t)^2 dt = 1/2
    v, err = integrate_semiinfinite_radial(lambda t: t * bessel_k(0, np.maximum(t, 1e-300)) ** 2, 0.0, 0.5)
    assert v == pytest.approx(0.5, rel=1e-11)
    assert err < 1e-9


@given(st.floats(0.01, 50.0), st.floats(0.0, 10.0))
def test_semiinfinite_exponential(rate, a):
    v, _ = integrate_semiinfinite_radial(lambda t: np.exp(-rate * (t - a)), a, 1.0 / rate)
    assert v == pytest.approx(1.0 / rate, rel=1e-10)


def test_interval_endpoint_singularities():
    assert integrate_interval(lambda t: np.log(np.maximum(t, 1e-300)), 0.0, 1.0).value == pytest.approx(-1.0, rel=1e-10)
    assert integrate_interval(lambda t: np.sqrt(t), 0.0, 1.0).value == pytest.approx(2.0 / 3.0, rel=1e-10)
    assert integrate_interval(lambda t: 1.0 / np.sqrt(np.maximum(t, 1e-300)), 0.0, 1.0,
                              QuadratureSpec(1e-8)).value == pytest.approx(2.0, rel=1e-7)


def test_interval_against_scipy_oscillatory():
    f = lambda t: np.sin(30.0 * t) ** 2 / (1.0 + t * t)
    ref = integrate.quad(f, 0.0, 5.0, limit=500, epsabs=0, epsrel=1e-13)[0]
    assert integrate_interval(f, 0.0, 5.0).value == pytest.approx(ref, rel=1e-10)


def test_interval_reversed_and_empty():
    assert integrate_interval(lambda t: t, 1.0, 0.0).value == pytest.approx(-0.5)
    assert integrate_interval(lambda t: t, 2.0, 2.0).value == 0.0


def test_quadrature_budget_exhausted():
    with pytest.raises(ConvergenceError):
        integrate_interval(lambda t: np.sin(1.0 / np.maximum(t, 1e-12)), 0.0, 1.0,
                           QuadratureSpec(1e-12, 0.0, 16))


def test_semiinfinite_rejects_non_decaying():
    with pytest.raises(ConvergenceError):
        integrate_semiinfinite_radial(lambda t: np.ones_like(t), 0.0, 1.0)


def test_root_simple():
    r = find_root_bracketed(lambda x: x * x - 2.0, RootBracket(0.0, 2.0, 1e-12))
    assert r.x == pytest.approx(math.sqrt(2.0), rel=1e-15)


def test_root_rejects_pole():
    with pytest.raises(ConvergenceError):
        find_root_bracketed(math.tan, RootBracket(1.0, 2.0, 1e-9))


def test_root_no_sign_change():
    with pytest.raises(NoSignChangeError):
        find_root_bracketed(lambda x: x * x + 1.0, RootBracket(-1.0, 1.0))


def test_root_bracket_validation():
    with pytest.raises(DomainError):
        RootBracket(1.0, 0.0)
    with pytest.raises(DomainError):
        RootBracket(0.0, math.inf)


@given(st.floats(-5.0, 5.0))
def test_root_property(c):
    r = find_root_bracketed(lambda x: math.tanh(x - c), RootBracket(-10.0, 10.0, 1e-12))
    assert r.x == pytest.approx(c, abs=1e-12)


def test_sign_change_brackets():
    grid = np.linspace(0.05, 10.05, 101)
    br = sign_change_brackets(grid, np.sin(grid))
    assert len(br) == 3
    for (lo, hi), root in zip(br, [math.pi, 2 * math.pi, 3 * math.pi]):
        assert lo <= root <= hi


def test_golden_section():
    x, fx = golden_section_maximize(lambda t: -(t - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-6)
