import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from freecoupling.errors import DomainError, NoModeError, PhaseMatchingWarning
from freecoupling.materials import NonDispersive
from freecoupling.modes import (
    HollowCoreConfig,
    ImportedModeProfile,
    MetalHoleConfig,
    coupling_from_imported_mode,
    coupling_from_mode,
    hollow_core_residual,
    metal_hole_residual,
    read_mode_profile,
    solve_hollow_core,
    solve_metal_hole,
    solve_metal_hole_all,
    write_mode_profile,
)
from freecoupling.physics import CONSTANTS, electron_from_beta
from freecoupling.regions import HalfSpace

TWO_PI = 2 * math.pi

hollow_configs = [HollowCoreConfig(0.2, 0.5, 4.0), HollowCoreConfig(1.0, 2.106, 1.1), HollowCoreConfig(0.05, 0.3, 12.0)]
metal_configs = [MetalHoleConfig(0.01, 1.2), MetalHoleConfig(0.1, 1.3), MetalHoleConfig(0.5, 1.6)]


def _jump(mode, rho):
    below = mode.fields(rho * (1 - 1e-12))
    above = mode.fields(rho * (1 + 1e-12))
    return below, above


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


@pytest.mark.parametrize("cfg", hollow_configs)
def test_hollow_core_continuity(cfg):
    mode = solve_hollow_core(cfg)
    assert mode.residual <= 1e-10
    for rho, e_in, e_out in ((cfg.d, 1.0, cfg.eps), (cfg.d2, cfg.eps, 1.0)):
        (er0, hp0, ez0), (er1, hp1, ez1) = _jump(mode, rho)
        assert _rel(ez0[0], ez1[0]) < 1e-8
        assert _rel(hp0[0], hp1[0]) < 1e-8
        assert _rel(e_in * er0[0], e_out * er1[0]) < 1e-8


@pytest.mark.parametrize("cfg", metal_configs)
def test_metal_hole_continuity(cfg):
    for mode in solve_metal_hole_all(cfg):
        assert abs(metal_hole_residual(math.log(mode.alpha), cfg)) <= 1e-10
        (er0, hp0, ez0), (er1, hp1, ez1) = _jump(mode, cfg.d)
        assert _rel(ez0[0], ez1[0]) < 1e-8
        assert _rel(hp0[0], hp1[0]) < 1e-8
        assert _rel(er0[0], cfg.eps * er1[0]) < 1e-8


def _ratio_form_residual(mode):
    # Independent ratio form of the three-zone dispersion relation.
    cfg = mode.config
    a, kp, eps = mode.alpha, mode.kappa, cfg.eps
    x1, x2 = TWO_PI * cfg.d, TWO_PI * cfg.d2
    J0, J1, Y0, Y1 = special.j0, special.j1, special.y0, special.y1
    ri = special.i1e(a * x1) / special.i0e(a * x1)
    p = ((a / kp) * eps * (Y1(kp * x1) * J1(kp * x2) - J1(kp * x1) * Y1(kp * x2))
         + ri * (-Y0(kp * x1) * J1(kp * x2) + J0(kp * x1) * Y1(kp * x2)))
    q = ((-J1(kp * x1) * Y0(kp * x2) + Y1(kp * x1) * J0(kp * x2))
         + (kp / (eps * a)) * ri * (J0(kp * x1) * Y0(kp * x2) - Y0(kp * x1) * J0(kp * x2)))
    rk = special.k1e(a * x2) / special.k0e(a * x2)
    return (p + q * rk) / (abs(p) + abs(q * rk))


@pytest.mark.parametrize("cfg", hollow_configs)
def test_hollow_core_ratio_form(cfg):
    mode = solve_hollow_core(cfg)
    assert abs(_ratio_form_residual(mode)) < 1e-8
    assert mode.k_z**2 == pytest.approx(1 + mode.alpha**2, rel=1e-12)
    assert mode.k_z**2 == pytest.approx(cfg.eps - mode.kappa**2, rel=1e-12)
    assert 1.0 < mode.k_z < math.sqrt(cfg.eps)


@settings(max_examples=15)
@given(st.floats(0.05, 1.0), st.floats(0.05, 1.0), st.floats(0.5, 30.0))
def test_hollow_core_roots_are_roots(d, thickness, chi):
    cfg = HollowCoreConfig(d, d + thickness, 1 + chi)
    try:
        mode = solve_hollow_core(cfg)
    except NoModeError:
        return
    assert mode.residual <= 1e-10
    assert abs(_ratio_form_residual(mode)) < 1e-6


def test_no_mode_cases():
    with pytest.raises(NoModeError):
        solve_hollow_core(HollowCoreConfig(0.5, 0.6, 1.001))
    with pytest.raises(NoModeError):
        solve_metal_hole(MetalHoleConfig(0.1, 1.0))
    with pytest.raises(NoModeError):
        solve_metal_hole(MetalHoleConfig(0.1, 0.5))
    with pytest.raises(DomainError):
        HollowCoreConfig(0.5, 0.4, 2.0)


def test_hollow_core_residual_parameterisation():
    cfg = HollowCoreConfig(0.2, 0.5, 4.0)
    s = np.linspace(0.01, 0.99, 50)
    r = hollow_core_residual(s, cfg)
    assert np.all(np.abs(r) <= 1.0 + 1e-12)


def test_metal_hole_small_radius_mode():
    mode = solve_metal_hole(MetalHoleConfig(0.01, 1.2))
    # A thin hole confines the plasmon strongly.
    assert mode.k_z > 10


def _oracle_norm_hollow(mode):
    cfg = mode.config
    f = lambda eps: (lambda x: eps * (abs(mode.fields(x / TWO_PI)[0][0]) ** 2
                                      + abs(mode.fields(x / TWO_PI)[2][0]) ** 2) * TWO_PI * x)
    x1, x2 = TWO_PI * cfg.d, TWO_PI * cfg.d2
    opts = dict(epsabs=0.0, epsrel=1e-11, limit=500)
    return (integrate.quad(f(1.0), 0.0, x1, **opts)[0] + integrate.quad(f(cfg.eps), x1, x2, **opts)[0]
            + integrate.quad(f(1.0), x2, np.inf, **opts)[0])


def _oracle_norm_metal(mode):
    cfg = mode.config
    w2 = cfg.omega_p_over_omega**2
    x1 = TWO_PI * cfg.d

    def dens(x, weight):
        er, hp, ez = (c[0] for c in mode.fields(x / TWO_PI))
        return 0.5 * (weight * (abs(er) ** 2 + abs(ez) ** 2) + abs(hp) ** 2) * TWO_PI * x

    opts = dict(epsabs=0.0, epsrel=1e-11, limit=500)
    return (integrate.quad(lambda x: dens(x, 1.0), 0.0, x1, **opts)[0]
            + integrate.quad(lambda x: dens(x, 1.0 + w2), x1, np.inf, **opts)[0])


@pytest.mark.parametrize("cfg", [hollow_configs[0], hollow_configs[2]])
def test_hollow_core_coupling_oracle(cfg):
    mode = solve_hollow_core(cfg)
    c = coupling_from_mode(mode)
    ez0 = mode.fields(0.0)[2][0]
    ref = CONSTANTS.alpha_fs * TWO_PI**2 * abs(ez0) ** 2 / _oracle_norm_hollow(mode)
    assert c.g_sq_per_length == pytest.approx(ref, rel=1e-7)
    assert 0 < c.ratio <= 1


@pytest.mark.parametrize("cfg", metal_configs)
def test_metal_hole_coupling_oracle(cfg):
    mode = solve_metal_hole(cfg)
    c = coupling_from_mode(mode)
    ez0 = mode.fields(0.0)[2][0]
    ref = CONSTANTS.alpha_fs * TWO_PI**2 * abs(ez0) ** 2 / _oracle_norm_metal(mode)
    assert c.g_sq_per_length == pytest.approx(ref, rel=1e-7)
    assert 0 < c.ratio <= 1
    assert mode.log_axis_intensity() == pytest.approx(math.log(abs(ez0) ** 2), rel=1e-10)


# ------------------------------------------------------------ imported


def _uniform_profile(kz=2.0):
    nx, ny = 11, 21
    E = np.zeros((3, ny, nx), complex)
    E[2] = 1.0
    eps = np.ones((ny, nx))
    eps[0, 0] = 4.0
    return ImportedModeProfile(nx, ny, 0.1, 0.05, (0.0, 0.0), E, eps, kz, omega_hz=1e15)


def test_imported_uniform_box():
    p = _uniform_profile()
    p.eps[:] = 1.0
    c = coupling_from_imported_mode(p, electron_from_beta(0.5))
    assert c.g_sq_per_length == pytest.approx(CONSTANTS.alpha_fs / (1.0 * 1.0), rel=1e-12)
    assert p.electron_position == (0.5, 0.5)


def test_imported_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    p = _uniform_profile()
    p.E = rng.normal(size=p.E.shape) + 1j * rng.normal(size=p.E.shape)
    path = tmp_path / "mode.csv"
    write_mode_profile(p, path)
    q = read_mode_profile(path)
    assert np.array_equal(q.E, p.E)
    assert np.array_equal(q.eps, p.eps)
    assert (q.nx, q.ny, q.dx, q.dy, q.kz_over_k, q.omega_hz) == (p.nx, p.ny, p.dx, p.dy, p.kz_over_k, p.omega_hz)


def test_imported_reader_rejects_bad_order(tmp_path):
    p = _uniform_profile()
    path = tmp_path / "mode.csv"
    write_mode_profile(p, path)
    lines = path.read_text().splitlines()
    lines[1], lines[2] = lines[2], lines[1]
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(DomainError):
        read_mode_profile(path)


def test_imported_phase_matching_warning():
    with pytest.warns(PhaseMatchingWarning):
        coupling_from_imported_mode(_uniform_profile(kz=4.0), electron_from_beta(0.5))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        coupling_from_imported_mode(_uniform_profile(kz=2.0), electron_from_beta(0.5))


def test_imported_bound_ratio():
    c = coupling_from_imported_mode(_uniform_profile(), electron_from_beta(0.5), region=HalfSpace(0.1))
    assert c.bound.material.value == pytest.approx(9 / 4)
    assert c.ratio == pytest.approx(math.sqrt(c.g_sq_per_length / c.bound.g_ub_sq))
    with pytest.raises(DomainError):
        coupling_from_imported_mode(_uniform_profile(), electron_from_beta(0.5), position=(5.0, 0.0))


def test_imported_sampled_analytic_mode():
    cfg = HollowCoreConfig(0.2, 0.5, 4.0)
    mode = solve_hollow_core(cfg)
    n, half = 601, 2.0
    x = np.linspace(-half, half, n)
    X, Y = np.meshgrid(x, x)
    R = np.hypot(X, Y)
    er, _, ez = (f.reshape(R.shape) for f in mode.fields(R.ravel()))
    phi = np.arctan2(Y, X)
    E = np.stack([er * np.cos(phi), er * np.sin(phi), ez])
    eps = np.where((R >= cfg.d) & (R <= cfg.d2), cfg.eps, 1.0)
    h = x[1] - x[0]
    p = ImportedModeProfile(n, n, h, h, (-half, -half), E, eps, mode.k_z)
    c = coupling_from_imported_mode(p, electron_from_beta(mode.beta_match))
    ref = coupling_from_mode(mode, with_bound=False).g_sq_per_length
    assert c.g_sq_per_length == pytest.approx(ref, rel=0.02)
