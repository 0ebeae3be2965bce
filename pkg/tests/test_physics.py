import math

import pytest
from hypothesis import given, strategies as st

from freecoupling.errors import DomainError
from freecoupling.physics import CONSTANTS, ElectronParams, electron_from_beta, evanescent_scales


def test_fine_structure_constant_consistent():
    assert CONSTANTS.alpha_from_si() == pytest.approx(7.2973525693e-3, rel=1e-9)
    assert 1.0 / CONSTANTS.alpha_fs == pytest.approx(137.035999, rel=1e-8)


def test_compton_wavelength():
    assert CONSTANTS.compton_from_si() == pytest.approx(2.42631023867e-12, rel=1e-9)


@given(st.floats(1e-4, 0.9999))
def test_kinematics_relations(beta):
    e = electron_from_beta(beta)
    sc = evanescent_scales(e, 1.0)
    assert sc.k == pytest.approx(2 * math.pi)
    assert sc.k_e == pytest.approx(sc.k / beta, rel=1e-14)
    assert sc.alpha_e ** 2 == pytest.approx(sc.k_e ** 2 - sc.k ** 2, rel=1e-9)
    assert sc.alpha_e == pytest.approx(sc.k / (e.gamma * beta), rel=1e-13)


def test_example_half_light_speed_squared():
    e = electron_from_beta(1 / math.sqrt(2))
    sc = evanescent_scales(e)
    assert e.gamma == pytest.approx(math.sqrt(2))
    assert sc.alpha_e == pytest.approx(sc.k)


def test_de_broglie_wavelength():
    e = electron_from_beta(0.253)
    assert e.de_broglie == pytest.approx(CONSTANTS.lambda_compton / (e.gamma * 0.253))


@pytest.mark.parametrize("beta", [0.0, 1.0, -0.2, 1.5])
def test_beta_domain(beta):
    with pytest.raises(DomainError):
        electron_from_beta(beta)


def test_inconsistent_gamma_rejected():
    with pytest.raises(DomainError):
        ElectronParams(0.5, 2.0)


def test_sigma_units():
    e = electron_from_beta(0.3, 10e-9, "m")
    assert e.sigma_over_lambda(1550e-9) == pytest.approx(10 / 1550)
    with pytest.raises(DomainError):
        e.sigma_over_lambda()
    assert electron_from_beta(0.3, 0.01, "lambda").sigma_over_lambda() == 0.01
    with pytest.raises(DomainError):
        electron_from_beta(0.3, -1.0)
