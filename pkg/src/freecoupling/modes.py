"""Guided TM01 modes of cylindrical structures and their coupling to an on-axis electron.

Two geometries are solved semi-analytically: a dielectric annulus (hollow-core
waveguide) and a cylindrical hole in a lossless Drude metal. A third entry
point accepts a mode profile computed elsewhere on a rectangular grid.

Internally the solvers work in units where ``k = 1``; propagation constants
and decay constants are reported in units of ``k`` and radii in units of the
wavelength. The coupling per unit length of a mode with axial field ``e_z``
is

    |g|^2 / (L / lambda) = alpha_fs * lambda^2 * |e_z(0)|^2 / N,

where ``N`` is the cross-sectional mode norm in units of ``lambda^2``. The
mode is phase matched to an electron with ``beta = k / k_z``.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import special

from .bounds import CouplingBound, coupling_bound
from .errors import ConvergenceError, DomainError, NoModeError, PhaseMatchingWarning
from .materials import Drude, Material, NonDispersive
from .numerics import (
    QuadratureSpec,
    RootBracket,
    find_root_bracketed,
    integrate_interval,
    integrate_semiinfinite_radial,
    sign_change_brackets,
)
from .physics import CONSTANTS, ElectronParams, electron_from_beta
from .regions import Annulus, CylinderExterior, DesignRegion

__all__ = [
    "HollowCoreConfig",
    "MetalHoleConfig",
    "ModeSolution",
    "ModeCoupling",
    "ImportedModeProfile",
    "solve_hollow_core",
    "solve_metal_hole",
    "solve_metal_hole_all",
    "hollow_core_residual",
    "metal_hole_residual",
    "coupling_from_mode",
    "coupling_from_imported_mode",
    "read_mode_profile",
    "write_mode_profile",
]

TWO_PI = 2.0 * math.pi
ROOT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class HollowCoreConfig:
    """Dielectric annulus ``d <= rho <= d2`` (in wavelengths) with permittivity ``eps``."""

    d: float
    d2: float
    eps: float
    n_scan: int = 400

    def __post_init__(self):
        if not (self.d > 0.0 and math.isfinite(self.d)):
            raise DomainError("d must be positive")
        if not (self.d2 > self.d and math.isfinite(self.d2)):
            raise DomainError("d2 must exceed d")
        if not (self.eps > 1.0 and math.isfinite(self.eps)):
            raise DomainError("eps must exceed 1")
        if self.n_scan < 200:
            raise DomainError("n_scan must be at least 200")


@dataclass(frozen=True)
class MetalHoleConfig:
    """Vacuum hole of radius ``d`` (in wavelengths) in a Drude metal.

    ``omega_p_over_omega`` fixes the permittivity ``1 - (omega_p/omega)^2``.
    The root scan covers ``k < k_z <= kz_max * k``.
    """

    d: float
    omega_p_over_omega: float
    n_scan: int = 400
    kz_max: float = 1e3

    def __post_init__(self):
        if not (self.d > 0.0 and math.isfinite(self.d)):
            raise DomainError("d must be positive")
        if not (self.omega_p_over_omega > 0.0 and math.isfinite(self.omega_p_over_omega)):
            raise DomainError("omega_p_over_omega must be positive")
        if self.n_scan < 200:
            raise DomainError("n_scan must be at least 200")
        if not self.kz_max > 1.0:
            raise DomainError("kz_max must exceed 1")

    @property
    def eps(self) -> float:
        return 1.0 - self.omega_p_over_omega**2


@dataclass(frozen=True)
class ModeSolution:
    """A TM01 mode.

    ``k_z``, ``alpha`` and ``kappa`` are in units of ``k``. ``coefficients``
    holds the zone amplitudes with the field on the axis normalised so that
    ``e_z(d) = A = 1``. ``n_roots`` counts the roots found by the scan and
    ``residual`` is the relative boundary-condition mismatch at the root.
    """

    kind: str
    k_z: float
    alpha: float
    kappa: float
    beta_match: float
    coefficients: dict
    residual: float
    n_roots: int
    config: object = field(repr=False, default=None)

    @property
    def multi_root(self) -> bool:
        return self.n_roots > 1

    def fields(self, rho):
        """``(e_rho, h_phi, e_z)`` at radii ``rho`` in wavelengths, as complex arrays.

        ``h_phi`` is the magnetic field scaled by the vacuum impedance.
        """
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        if np.any(rho < 0.0):
            raise DomainError("rho must be non-negative")
        x = TWO_PI * rho
        if self.kind == "hollow_core":
            return _hollow_fields(self, x)
        return _metal_fields(self, x)

    def log_axis_intensity(self) -> float:
        """``log |e_z(0)|^2``."""
        xd = TWO_PI * self.config.d
        z = self.alpha * xd
        return -2.0 * (math.log(special.i0e(z)) + z)


@dataclass(frozen=True)
class ModeCoupling:
    """Coupling of a mode to the phase-matched electron and its bound.

    ``g_sq_per_length`` is ``|g|^2 / (L / lambda)``; ``ratio`` is
    ``|g| / g_ub`` at equal length.
    """

    g_sq_per_length: float
    log_g_sq_per_length: float
    beta_match: float
    ratio: Optional[float] = None
    bound: Optional[CouplingBound] = None
    mode: Optional[ModeSolution] = field(repr=False, default=None)

    @property
    def g_per_sqrt_length(self) -> float:
        return math.sqrt(self.g_sq_per_length)


# ---------------------------------------------------------- hollow core


def _hollow_coefficients(s, cfg: HollowCoreConfig):
    s = np.asarray(s, dtype=float)
    chi = cfg.eps - 1.0
    eps = cfg.eps
    xd = TWO_PI * cfg.d
    x2 = TWO_PI * cfg.d2
    alpha = s * math.sqrt(chi)
    kappa = math.sqrt(chi) * np.sqrt((1.0 - s) * (1.0 + s))
    kz = np.sqrt(1.0 + s * s * chi)
    r1 = special.i1e(alpha * xd) / (alpha * special.i0e(alpha * xd))
    u = kappa * xd
    j0, j1, y0, y1 = special.j0(u), special.j1(u), special.y0(u), special.y1(u)
    det = (eps / kappa) * (y0 * j1 - j0 * y1)
    b = ((eps / kappa) * j1 - j0 * r1) / det
    c = (y0 * r1 - (eps / kappa) * y1) / det
    w = kappa * x2
    dd = b * special.y0(w) + c * special.j0(w)
    return kz, alpha, kappa, b, c, dd


def hollow_core_residual(s, cfg: HollowCoreConfig):
    """Normalised mismatch of ``h_phi`` at the outer radius.

    ``s`` parametrises ``k_z^2 = k^2 (1 + s^2 chi)`` on ``0 < s < 1``. The
    inner-boundary conditions are solved exactly, so the residual is finite
    everywhere on the scan and vanishes at guided modes.
    """
    kz, alpha, kappa, b, c, dd = _hollow_coefficients(s, cfg)
    x2 = TWO_PI * cfg.d2
    w = kappa * x2
    t1 = (cfg.eps / kappa) * (b * special.y1(w) + c * special.j1(w))
    t2 = (dd / alpha) * special.k1e(alpha * x2) / special.k0e(alpha * x2)
    return (t1 + t2) / (np.abs(t1) + np.abs(t2))


def _scan_roots(residual, grid, tolerance=ROOT_TOLERANCE):
    vals = residual(grid)
    roots = []
    for lo, hi in sign_change_brackets(grid, vals):
        try:
            r = find_root_bracketed(lambda t: float(residual(np.array([t]))[0]), RootBracket(lo, hi, tolerance))
        except ConvergenceError:
            continue
        roots.append(r)
    return roots


def solve_hollow_core(cfg: HollowCoreConfig) -> ModeSolution:
    """TM01 mode of a dielectric hollow-core waveguide.

    The fundamental branch, which has the largest ``k_z`` among the roots,
    is returned; ``n_roots`` reports how many roots were found.
    """
    grid = np.linspace(0.0, 1.0, cfg.n_scan + 2)[1:-1]
    roots = _scan_roots(lambda s: hollow_core_residual(s, cfg), grid)
    if not roots:
        raise NoModeError(f"no guided TM01 mode for {cfg}")
    best = max(roots, key=lambda r: r.x)
    kz, alpha, kappa, b, c, dd = (float(v[0]) for v in _hollow_coefficients(np.array([best.x]), cfg))
    xd = TWO_PI * cfg.d
    x2 = TWO_PI * cfg.d2
    coeffs = {
        "A": 1.0,
        "B": b * special.y0(kappa * xd),
        "C": c * special.j0(kappa * x2),
        "D": dd,
        "b": b,
        "c": c,
    }
    return ModeSolution("hollow_core", kz, alpha, kappa, 1.0 / kz, coeffs, best.residual, len(roots), cfg)


def _hollow_fields(mode: ModeSolution, x):
    cfg = mode.config
    xd = TWO_PI * cfg.d
    x2 = TWO_PI * cfg.d2
    a, kp, kz = mode.alpha, mode.kappa, mode.k_z
    b, c, dd = mode.coefficients["b"], mode.coefficients["c"], mode.coefficients["D"]
    e_rho = np.zeros(x.shape, complex)
    h_phi = np.zeros(x.shape, complex)
    e_z = np.zeros(x.shape, complex)
    z1 = x < xd
    z3 = x > x2
    z2 = ~(z1 | z3)
    t = x[z1]
    norm = special.i0e(a * xd)
    grow = np.exp(a * (t - xd))
    e_z[z1] = special.i0e(a * t) / norm * grow
    e_rho[z1] = -1j * (kz / a) * special.i1e(a * t) / norm * grow
    h_phi[z1] = -1j * (1.0 / a) * special.i1e(a * t) / norm * grow
    t = x[z2]
    zy0 = b * special.y0(kp * t) + c * special.j0(kp * t)
    zy1 = b * special.y1(kp * t) + c * special.j1(kp * t)
    e_z[z2] = zy0
    e_rho[z2] = -1j * (kz / kp) * zy1
    h_phi[z2] = -1j * (cfg.eps / kp) * zy1
    t = x[z3]
    norm = special.k0e(a * x2)
    damp = np.exp(-a * (t - x2))
    e_z[z3] = dd * special.k0e(a * t) / norm * damp
    e_rho[z3] = 1j * (kz / a) * dd * special.k1e(a * t) / norm * damp
    h_phi[z3] = 1j * (1.0 / a) * dd * special.k1e(a * t) / norm * damp
    return e_rho, h_phi, e_z


def _hollow_norm(mode: ModeSolution, spec: QuadratureSpec) -> float:
    # Electric-energy norm  integral of eps |e|^2 2 pi x dx  in units of 1/k^2.
    cfg = mode.config
    xd = TWO_PI * cfg.d
    x2 = TWO_PI * cfg.d2
    a = mode.alpha

    def density(t, eps):
        e_rho, _, e_z = mode.fields(t / TWO_PI)
        return eps * (np.abs(e_rho) ** 2 + np.abs(e_z) ** 2) * TWO_PI * t

    n1 = integrate_interval(lambda t: density(t, 1.0), 0.0, xd, spec,
                            breakpoints=[xd - j / a for j in (1.0, 4.0, 16.0)]).value
    wl = math.pi / max(mode.kappa, 1e-300)
    pts = list(np.arange(xd + wl, x2, wl))[:2000]
    n2 = integrate_interval(lambda t: density(t, cfg.eps), xd, x2, spec, breakpoints=pts).value
    n3 = integrate_semiinfinite_radial(lambda t: density(np.maximum(t, x2), 1.0), x2, 1.0 / (2.0 * a), spec).value
    return n1 + n2 + n3


# ------------------------------------------------------------ metal hole


def _metal_params(log_alpha, cfg: MetalHoleConfig):
    alpha = np.exp(log_alpha)
    kz = np.sqrt(1.0 + alpha * alpha)
    kappa = np.sqrt(alpha * alpha + cfg.omega_p_over_omega**2)
    return kz, alpha, kappa


def metal_hole_residual(log_alpha, cfg: MetalHoleConfig):
    """Normalised mismatch of ``h_phi`` at the hole wall as a function of ``log(alpha/k)``."""
    kz, alpha, kappa = _metal_params(log_alpha, cfg)
    xd = TWO_PI * cfg.d
    t1 = special.i1e(alpha * xd) / (alpha * special.i0e(alpha * xd))
    t2 = (cfg.eps / kappa) * special.k1e(kappa * xd) / special.k0e(kappa * xd)
    return (t1 + t2) / (np.abs(t1) + np.abs(t2))


def solve_metal_hole_all(cfg: MetalHoleConfig) -> list:
    """All TM01 surface-plasmon modes of the hole found by the scan, by increasing ``k_z``."""
    if not cfg.eps < 0.0:
        raise NoModeError("a bound surface mode needs negative permittivity")
    top = math.log(math.sqrt(cfg.kz_max**2 - 1.0))
    grid = np.linspace(math.log(1e-6), top, cfg.n_scan)
    roots = _scan_roots(lambda t: metal_hole_residual(t, cfg), grid)
    if not roots:
        raise NoModeError(f"no surface mode for {cfg}")
    out = []
    for r in sorted(roots, key=lambda r: r.x):
        kz, alpha, kappa = (float(v) for v in _metal_params(r.x, cfg))
        out.append(ModeSolution("metal_hole", kz, alpha, kappa, 1.0 / kz, {"A": 1.0}, r.residual, len(roots), cfg))
    return out


def solve_metal_hole(cfg: MetalHoleConfig) -> ModeSolution:
    """Surface-plasmon TM01 mode of a metallic hole with the smallest ``k_z``."""
    return solve_metal_hole_all(cfg)[0]


def _metal_fields(mode: ModeSolution, x):
    cfg = mode.config
    xd = TWO_PI * cfg.d
    a, kp, kz = mode.alpha, mode.kappa, mode.k_z
    e_rho = np.zeros(x.shape, complex)
    h_phi = np.zeros(x.shape, complex)
    e_z = np.zeros(x.shape, complex)
    inside = x < xd
    t = x[inside]
    norm = special.i0e(a * xd)
    grow = np.exp(a * (t - xd))
    e_z[inside] = special.i0e(a * t) / norm * grow
    e_rho[inside] = -1j * (kz / a) * special.i1e(a * t) / norm * grow
    h_phi[inside] = -1j * (1.0 / a) * special.i1e(a * t) / norm * grow
    t = x[~inside]
    norm = special.k0e(kp * xd)
    damp = np.exp(-kp * (t - xd))
    e_z[~inside] = special.k0e(kp * t) / norm * damp
    e_rho[~inside] = 1j * (kz / kp) * special.k1e(kp * t) / norm * damp
    h_phi[~inside] = 1j * (cfg.eps / kp) * special.k1e(kp * t) / norm * damp
    return e_rho, h_phi, e_z


def _metal_norm(mode: ModeSolution, spec: QuadratureSpec) -> float:
    # Energy norm of a lossless Drude medium, 1/2 (|e|^2 d(omega eps)/d omega + |h|^2).
    cfg = mode.config
    xd = TWO_PI * cfg.d
    a, kp = mode.alpha, mode.kappa
    wp2 = cfg.omega_p_over_omega**2

    def vacuum(t):
        e_rho, h_phi, e_z = mode.fields(t / TWO_PI)
        return 0.5 * (np.abs(e_rho) ** 2 + np.abs(e_z) ** 2 + np.abs(h_phi) ** 2) * TWO_PI * t

    def metal(t):
        e_rho, h_phi, e_z = mode.fields(np.maximum(t, xd) / TWO_PI)
        e2 = np.abs(e_rho) ** 2 + np.abs(e_z) ** 2
        return 0.5 * ((1.0 + wp2) * e2 + np.abs(h_phi) ** 2) * TWO_PI * t

    pts = [xd - j / a for j in (1.0, 4.0, 16.0)]
    n1 = integrate_interval(vacuum, 0.0, xd, spec, breakpoints=pts).value
    n2 = integrate_semiinfinite_radial(metal, xd, 1.0 / (2.0 * kp), spec).value
    return n1 + n2


# -------------------------------------------------------------- coupling


def coupling_from_mode(mode: ModeSolution, spec: Optional[QuadratureSpec] = None,
                       with_bound: bool = True) -> ModeCoupling:
    """Coupling per unit length of a solved mode and its ratio to the bound.

    The bound uses the phase-matched electron and the matching design
    region: the annulus of the waveguide with a non-dispersive material, or
    the exterior of the hole with the Drude material.
    """
    spec = spec or QuadratureSpec(relative_tolerance=1e-9)
    if mode.kind == "hollow_core":
        norm = _hollow_norm(mode, spec)
    else:
        norm = _metal_norm(mode, spec)
    log_g = math.log(CONSTANTS.alpha_fs * TWO_PI**2) + mode.log_axis_intensity() - math.log(norm)
    if not with_bound:
        return ModeCoupling(math.exp(log_g), log_g, mode.beta_match, mode=mode)
    electron = electron_from_beta(mode.beta_match)
    cfg = mode.config
    if mode.kind == "hollow_core":
        bound = coupling_bound(NonDispersive(cfg.eps - 1.0), Annulus(cfg.d, cfg.d2), electron, 1.0, 1.0, spec)
    else:
        bound = coupling_bound(Drude(cfg.omega_p_over_omega), CylinderExterior(cfg.d), electron, 1.0, 1.0, spec,
                               omega_m=1.0)
    ratio = math.exp(0.5 * (log_g - bound.log_g_ub_sq))
    return ModeCoupling(math.exp(log_g), log_g, mode.beta_match, ratio, bound, mode)


# --------------------------------------------------------- imported mode


@dataclass
class ImportedModeProfile:
    """Mode field sampled on a uniform rectangular grid.

    ``E`` has shape ``(3, ny, nx)`` holding complex ``(E_x, E_y, E_z)`` and
    ``eps`` the real permittivity on the same grid; node ``(ix, iy)`` sits at
    ``origin + (ix dx, iy dy)``. Lengths are in wavelengths. ``kz_over_k`` is
    the propagation constant of the mode; ``electron_position`` defaults to
    the grid centre.
    """

    nx: int
    ny: int
    dx: float
    dy: float
    origin: tuple
    E: np.ndarray
    eps: np.ndarray
    kz_over_k: float
    omega_hz: float = float("nan")
    electron_position: Optional[tuple] = None

    def __post_init__(self):
        self.E = np.asarray(self.E, dtype=complex)
        self.eps = np.asarray(self.eps, dtype=float)
        if self.nx < 2 or self.ny < 2:
            raise DomainError("grid needs at least 2 x 2 nodes")
        if self.E.shape != (3, self.ny, self.nx) or self.eps.shape != (self.ny, self.nx):
            raise DomainError("field or permittivity array has the wrong shape")
        if not (self.dx > 0.0 and self.dy > 0.0):
            raise DomainError("grid spacing must be positive")
        if np.any(self.eps < 1.0):
            raise DomainError("permittivity below 1 is not supported")
        if not self.kz_over_k > 0.0:
            raise DomainError("kz_over_k must be positive")
        self.origin = (float(self.origin[0]), float(self.origin[1]))
        if self.electron_position is None:
            self.electron_position = (self.origin[0] + 0.5 * (self.nx - 1) * self.dx,
                                      self.origin[1] + 0.5 * (self.ny - 1) * self.dy)

    @property
    def x(self):
        return self.origin[0] + self.dx * np.arange(self.nx)

    @property
    def y(self):
        return self.origin[1] + self.dy * np.arange(self.ny)


def _bilinear(grid_x, grid_y, values, px, py):
    if not (grid_x[0] <= px <= grid_x[-1] and grid_y[0] <= py <= grid_y[-1]):
        raise DomainError(f"electron position ({px}, {py}) lies outside the grid")
    ix = min(int(np.searchsorted(grid_x, px, side="right")) - 1, grid_x.size - 2)
    iy = min(int(np.searchsorted(grid_y, py, side="right")) - 1, grid_y.size - 2)
    tx = (px - grid_x[ix]) / (grid_x[ix + 1] - grid_x[ix])
    ty = (py - grid_y[iy]) / (grid_y[iy + 1] - grid_y[iy])
    v = values
    return ((1 - tx) * (1 - ty) * v[iy, ix] + tx * (1 - ty) * v[iy, ix + 1]
            + (1 - tx) * ty * v[iy + 1, ix] + tx * ty * v[iy + 1, ix + 1])


def coupling_from_imported_mode(profile: ImportedModeProfile, electron: ElectronParams,
                                position: Optional[Sequence[float]] = None,
                                region: Optional[DesignRegion] = None,
                                material: Optional[Material] = None,
                                spec: Optional[QuadratureSpec] = None) -> ModeCoupling:
    """Coupling per unit length of an imported mode to an electron at ``position``.

    The normalisation integral uses the trapezoidal rule on the grid. When
    ``region`` is given the ratio to the bound is reported; the material
    defaults to the worst case over the grid, a non-dispersive medium with
    the largest ``(eps - 1)^2 / eps``.
    """
    px, py = position if position is not None else profile.electron_position
    ez = _bilinear(profile.x, profile.y, profile.E[2], float(px), float(py))
    density = profile.eps * np.sum(np.abs(profile.E) ** 2, axis=0)
    norm = np.trapezoid(np.trapezoid(density, dx=profile.dx, axis=1), dx=profile.dy)
    if not norm > 0.0:
        raise DomainError("mode normalisation integral is zero")
    mismatch = abs(profile.kz_over_k * electron.beta - 1.0)
    if mismatch > 0.2:
        warnings.warn(f"electron speed is {mismatch:.0%} away from phase matching with the mode",
                      PhaseMatchingWarning, stacklevel=2)
    g_sq = CONSTANTS.alpha_fs * abs(ez) ** 2 / norm
    log_g = math.log(g_sq) if g_sq > 0.0 else -math.inf
    if region is None:
        return ModeCoupling(g_sq, log_g, electron.beta)
    if material is None:
        chi = profile.eps - 1.0
        worst = float(np.max(chi * chi / profile.eps))
        if not worst > 0.0:
            raise DomainError("profile contains no material; pass material explicitly")
        material = NonDispersive(float(chi.flat[np.argmax(chi * chi / profile.eps)]))
    bound = coupling_bound(material, region, electron, 1.0, 1.0, spec, omega_m=1.0)
    ratio = math.sqrt(g_sq / bound.g_ub_sq)
    return ModeCoupling(g_sq, log_g, electron.beta, ratio, bound)


_HEADER_KEYS = ("nx", "ny", "dx_over_lambda", "dy_over_lambda", "omega_hz", "kz_over_k", "origin")


def read_mode_profile(path) -> ImportedModeProfile:
    """Read a profile file.

    The first line is a JSON object with keys ``nx, ny, dx_over_lambda,
    dy_over_lambda, omega_hz, kz_over_k, origin`` (and optionally
    ``electron_position``). It is followed by ``nx * ny`` comma-separated rows
    ``ix, iy, ReEx, ImEx, ReEy, ImEy, ReEz, ImEz, eps`` with ``ix`` varying
    fastest.
    """
    with open(path, "r", encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        missing = [k for k in _HEADER_KEYS if k not in header]
        if missing:
            raise DomainError(f"profile header lacks {missing}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    nx, ny = int(header["nx"]), int(header["ny"])
    if data.shape != (nx * ny, 9):
        raise DomainError(f"expected {nx * ny} rows of 9 columns, got {data.shape}")
    ix = data[:, 0].astype(int)
    iy = data[:, 1].astype(int)
    if np.any(ix != np.tile(np.arange(nx), ny)) or np.any(iy != np.repeat(np.arange(ny), nx)):
        raise DomainError("rows must be ordered with ix varying fastest")
    E = np.empty((3, ny, nx), complex)
    for comp in range(3):
        E[comp] = (data[:, 2 + 2 * comp] + 1j * data[:, 3 + 2 * comp]).reshape(ny, nx)
    eps = data[:, 8].reshape(ny, nx)
    pos = header.get("electron_position")
    return ImportedModeProfile(nx, ny, float(header["dx_over_lambda"]), float(header["dy_over_lambda"]),
                               tuple(header["origin"]), E, eps, float(header["kz_over_k"]),
                               float("nan") if header["omega_hz"] is None else float(header["omega_hz"]),
                               tuple(pos) if pos is not None else None)


def write_mode_profile(profile: ImportedModeProfile, path) -> None:
    """Write ``profile`` in the format read by :func:`read_mode_profile`."""
    header = {
        "nx": profile.nx,
        "ny": profile.ny,
        "dx_over_lambda": profile.dx,
        "dy_over_lambda": profile.dy,
        "omega_hz": None if math.isnan(profile.omega_hz) else profile.omega_hz,
        "kz_over_k": profile.kz_over_k,
        "origin": list(profile.origin),
        "electron_position": list(profile.electron_position),
    }
    iy, ix = np.meshgrid(np.arange(profile.ny), np.arange(profile.nx), indexing="ij")
    cols = [ix.ravel(), iy.ravel()]
    for comp in range(3):
        cols += [profile.E[comp].real.ravel(), profile.E[comp].imag.ravel()]
    cols.append(profile.eps.ravel())
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        np.savetxt(fh, np.column_stack(cols), delimiter=",", fmt=["%d", "%d"] + ["%.17g"] * 7)
