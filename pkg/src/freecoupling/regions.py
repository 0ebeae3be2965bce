"""Design regions and the geometric factor of the electron near field.

The geometric factor is the integral of the near-field intensity over the
transverse cross-section of the region that may hold material,

    g_geo^2 = integral over region of f(r) d^2 r,

with ``f`` as in :mod:`freecoupling.nearfield`. Region distances are stored
in units of the free-space wavelength. Every region considered here can be
reduced to a single radial integral: a half-space at distance d subtends the
angle ``2 arccos(d / rho)`` on the circle of radius rho.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DomainError
from .nearfield import gaussian_intensity_factor, scaled_intensity_factor
from .numerics import (
    QuadratureSpec,
    bessel_k,
    golden_section_maximize,
    integrate_interval,
    integrate_semiinfinite_radial,
)
from .physics import EvanescentScales, electron_from_beta, evanescent_scales

__all__ = [
    "HalfSpace",
    "TwoSidedSlot",
    "CylinderExterior",
    "Annulus",
    "DesignRegion",
    "GeometricFactor",
    "geometric_factor",
    "cylinder_closed_form",
    "log_cylinder_closed_form",
    "find_subrelativistic_peak",
]


def _check_distance(d):
    if not (d > 0.0 and math.isfinite(d)):
        raise DomainError(f"distance must be positive and finite, got {d}")


@dataclass(frozen=True)
class HalfSpace:
    """Material allowed in the half-space farther than ``d`` (in wavelengths) from the beam."""

    d: float

    def __post_init__(self):
        _check_distance(self.d)

    duty = 1.0


@dataclass(frozen=True)
class TwoSidedSlot:
    """Two half-spaces at ``+d`` and ``-d``; ``duty`` is the filled fraction along the beam."""

    d: float
    duty: float = 1.0

    def __post_init__(self):
        _check_distance(self.d)
        if not (0.0 < self.duty <= 1.0):
            raise DomainError("duty must lie in (0, 1]")


@dataclass(frozen=True)
class CylinderExterior:
    """Everything outside a cylinder of radius ``d`` around the beam."""

    d: float

    def __post_init__(self):
        _check_distance(self.d)

    duty = 1.0


@dataclass(frozen=True)
class Annulus:
    """Cylindrical shell ``d <= rho <= d2``."""

    d: float
    d2: float

    def __post_init__(self):
        _check_distance(self.d)
        if not (self.d2 > self.d and math.isfinite(self.d2)):
            raise DomainError("annulus requires d < d2 < inf")

    duty = 1.0


DesignRegion = Union[HalfSpace, TwoSidedSlot, CylinderExterior, Annulus]


@dataclass(frozen=True)
class GeometricFactor:
    """Geometric factor of a region for one electron speed.

    ``log_value`` is kept alongside ``value`` because the factor decays like
    ``exp(-2 alpha_e d)`` and underflows for large ``alpha_e d``.
    """

    value: float
    log_value: float
    region: DesignRegion
    beta: float
    d_over_lambda: float
    method: str
    error: float = 0.0


def _angular_weight(region, rho, d):
    if isinstance(region, (CylinderExterior, Annulus)):
        return np.full_like(rho, 2.0 * np.pi)
    half = 2.0 * np.arccos(np.clip(d / rho, -1.0, 1.0))
    return 2.0 * half if isinstance(region, TwoSidedSlot) else half


def log_cylinder_closed_form(scales: EvanescentScales, d: float) -> float:
    """Logarithm of :func:`cylinder_closed_form`, finite for any ``alpha_e d``."""
    _check_distance(d)
    z = scales.alpha_e * d
    k0, k1, k2 = (bessel_k(n, z, scaled=True) for n in (0, 1, 2))
    a2 = (scales.alpha_e / scales.k) ** 2
    ke2 = (scales.k_e / scales.k) ** 2
    bracket = a2 * (k1 * k1 - k0 * k0) + ke2 * (k0 * k2 - k1 * k1)
    return math.log(math.pi) + 2.0 * math.log(z) + math.log(bracket) - 2.0 * z


def cylinder_closed_form(scales: EvanescentScales, d: float) -> float:
    """Closed-form geometric factor of :class:`CylinderExterior` for a point electron.

    Uses the indefinite integrals of ``x K0(x)^2`` and ``x K1(x)^2``; ``d`` is
    in the length unit of ``scales``.
    """
    return math.exp(log_cylinder_closed_form(scales, d))


def geometric_factor(region: DesignRegion, scales: EvanescentScales, sigma: Optional[float] = None,
                     spec: Optional[QuadratureSpec] = None, method: str = "auto") -> GeometricFactor:
    """Geometric factor of ``region`` for the electron described by ``scales``.

    Parameters
    ----------
    region : DesignRegion
        Distances in units of the free-space wavelength.
    scales : EvanescentScales
    sigma : float, optional
        Gaussian beam waist in units of the wavelength; ``None`` for a point
        electron.
    spec : QuadratureSpec, optional
    method : {"auto", "quadrature", "closed_form"}
        ``closed_form`` is available for :class:`CylinderExterior` with a point
        electron.
    """
    spec = spec or QuadratureSpec()
    lam = scales.lambda_
    d = region.d * lam
    a = scales.alpha_e
    if method not in ("auto", "quadrature", "closed_form"):
        raise DomainError(f"unknown method {method!r}")
    if method == "closed_form":
        if not isinstance(region, CylinderExterior) or sigma is not None:
            raise DomainError("closed form exists only for a point electron outside a cylinder")
        log_v = log_cylinder_closed_form(scales, d)
        return GeometricFactor(math.exp(log_v), log_v, region, scales.beta, region.d, "closed_form")

    k2 = scales.k ** 2
    if sigma is None:
        def integrand(rho):
            return k2 * scaled_intensity_factor(scales, rho, d) * rho * _angular_weight(region, rho, d)
        label = "quadrature"
    else:
        if not sigma > 0.0:
            raise DomainError("sigma must be positive")
        s_len = sigma * lam

        def integrand(rho):
            vals = np.array([gaussian_intensity_factor(scales, s_len, r, spec, shift=d) for r in rho])
            return k2 * vals * rho * _angular_weight(region, rho, d)
        label = "gaussian_quadrature"

    decay = 1.0 / (2.0 * a)
    if isinstance(region, Annulus):
        d2 = region.d2 * lam
        pts = [d + decay * 2.0**j for j in range(-8, 12) if d + decay * 2.0**j < d2]
        if d > 0 and d < decay:
            pts += [d * 2.0**j for j in range(1, 30) if d * 2.0**j < min(d2, d + decay)]
        res = integrate_interval(integrand, d, d2, spec, breakpoints=pts)
    else:
        pts = [d + decay * 2.0**j for j in range(-8, 0)]
        res = integrate_semiinfinite_radial(integrand, d, decay, spec, breakpoints=pts)
    if not res.value > 0.0:
        raise DomainError("geometric factor is not positive; check the region and beam parameters")
    log_v = math.log(res.value) - 2.0 * a * d
    return GeometricFactor(math.exp(log_v), log_v, region, scales.beta, region.d, label, res.error * math.exp(-2.0 * a * d))


def find_subrelativistic_peak(region: DesignRegion, lambda_: float = 1.0, spec: Optional[QuadratureSpec] = None,
                              sigma: Optional[float] = None, n_scan: int = 200,
                              beta_range=(0.02, 0.95)) -> Optional[float]:
    """Speed that maximises the geometric factor inside ``beta_range``, if any.

    A scan of ``n_scan`` speeds is searched for an interior local maximum,
    which is then refined by golden-section search. Returns ``None`` when the
    factor has no interior maximum (it grows towards the relativistic end).
    """
    spec = spec or QuadratureSpec(relative_tolerance=1e-9)
    betas = np.linspace(beta_range[0], beta_range[1], int(n_scan))

    def g(beta):
        sc = evanescent_scales(electron_from_beta(float(beta)), lambda_)
        return geometric_factor(region, sc, sigma, spec).log_value

    vals = np.array([g(b) for b in betas])
    interior = np.nonzero((vals[1:-1] > vals[:-2]) & (vals[1:-1] >= vals[2:]))[0] + 1
    if interior.size == 0:
        return None
    j = int(interior[np.argmax(vals[interior])])
    beta_star, _ = golden_section_maximize(g, betas[j - 1], betas[j + 1], xtol=1e-7)
    return float(beta_star)
