"""Transverse intensity of the electron near field.

For a point electron the field energy density at transverse distance rho is
proportional to

    f(rho) = alpha_e^4/k^2 K0(alpha_e rho)^2 + k_e^2 alpha_e^2/k^2 K1(alpha_e rho)^2,

and the functions here return ``f / k^2`` so that the result is dimensionless
and its integral over ``d^2(k r)`` is the geometric factor. A Gaussian
transverse wavefunction is handled by averaging the field over the beam
profile with the Graf addition theorem, which reduces the average to radial
quadratures.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from .errors import DomainError
from .numerics import QuadratureSpec, bessel_i, bessel_k, integrate_interval
from .physics import EvanescentScales

__all__ = [
    "intensity_factor",
    "scaled_intensity_factor",
    "gaussian_field_averages",
    "gaussian_intensity_factor",
]

GAUSSIAN_SUPPORT = 6.0


def intensity_factor(scales: EvanescentScales, rho):
    """Point-electron near-field intensity ``f(rho)/k^2`` (dimensionless).

    Parameters
    ----------
    scales : EvanescentScales
    rho : float or array
        Transverse distance from the trajectory, ``rho > 0``, in the length
        unit of ``scales``.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(~(rho > 0.0)):
        raise DomainError("rho must be positive")
    x = scales.alpha_e * rho
    a2 = (scales.alpha_e / scales.k) ** 2
    ke2 = (scales.k_e / scales.k) ** 2
    out = a2 * a2 * bessel_k(0, x) ** 2 + ke2 * a2 * bessel_k(1, x) ** 2
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def scaled_intensity_factor(scales: EvanescentScales, rho, shift: float):
    """``intensity_factor(rho) * exp(2 alpha_e shift)`` without under/overflow."""
    rho = np.asarray(rho, dtype=float)
    if np.any(~(rho > 0.0)):
        raise DomainError("rho must be positive")
    x = scales.alpha_e * rho
    a2 = (scales.alpha_e / scales.k) ** 2
    ke2 = (scales.k_e / scales.k) ** 2
    damp = np.exp(-2.0 * scales.alpha_e * (rho - shift))
    out = (a2 * a2 * bessel_k(0, x, scaled=True) ** 2 + ke2 * a2 * bessel_k(1, x, scaled=True) ** 2) * damp
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def _radial_density(r, sigma):
    # Probability density of |r| for |phi|^2 = 2/(pi sigma^2) exp(-2 r^2/sigma^2).
    return 4.0 * r / sigma**2 * np.exp(-2.0 * r**2 / sigma**2)


def gaussian_field_averages(scales: EvanescentScales, sigma: float, r_perp: float,
                            spec: Optional[QuadratureSpec] = None, shift: float = 0.0):
    """Beam-averaged ``<K0>`` and radial ``<K1>`` at distance ``r_perp``.

    Returns ``(S0, V)`` with ``S0 = <K0(alpha_e |r - r'|)>`` and ``V`` the
    component along the radial direction of ``<K1(alpha_e |r - r'|) (r - r')/|r - r'|>``,
    averages taken over the Gaussian beam centred at the origin. Both are
    multiplied by ``exp(alpha_e * shift)``.
    """
    spec = spec or QuadratureSpec()
    if not sigma > 0.0:
        raise DomainError("sigma must be positive")
    if not r_perp >= 0.0:
        raise DomainError("r_perp must be non-negative")
    a = scales.alpha_e
    big_r = float(r_perp)
    top = GAUSSIAN_SUPPORT * sigma

    # Exponentially rescaled Bessel factors keep the products finite when
    # alpha_e * r_perp is large.
    def inner(r):
        return _radial_density(r, sigma) * bessel_i(0, a * r, scaled=True) * np.exp(a * (r - big_r + shift))

    def outer(r):
        r = np.maximum(r, 1e-300)
        return _radial_density(r, sigma) * bessel_k(0, a * r, scaled=True) * np.exp(a * (big_r - r + shift))

    cut = min(big_r, top)
    if cut > 0.0:
        a_in = integrate_interval(inner, 0.0, cut, spec, breakpoints=[sigma * f for f in (0.5, 1.0, 2.0)]).value
    else:
        a_in = 0.0
    if big_r < top:
        pts = [p for p in (sigma * 0.25, sigma * 0.5, sigma, 2.0 * sigma) if p > big_r]
        b_out = integrate_interval(outer, big_r, top, spec, breakpoints=pts).value
    else:
        b_out = 0.0
    x = a * max(big_r, 1e-300)
    k0, k1 = bessel_k(0, x, scaled=True), bessel_k(1, x, scaled=True)
    i0, i1 = bessel_i(0, x, scaled=True), bessel_i(1, x, scaled=True)
    s0 = k0 * a_in + i0 * b_out
    v = k1 * a_in - i1 * b_out
    return s0, v


def gaussian_intensity_factor(scales: EvanescentScales, sigma: float, r_perp,
                              spec: Optional[QuadratureSpec] = None, shift: float = 0.0) -> float:
    """Intensity factor of a Gaussian beam, same normalisation as :func:`intensity_factor`.

    ``r_perp`` is the field point relative to the beam centre, given as a
    distance or as an ``(x, y)`` pair. The result is multiplied by
    ``exp(2 alpha_e shift)``.
    """
    r = float(np.hypot(*r_perp)) if np.ndim(r_perp) else float(r_perp)
    s0, v = gaussian_field_averages(scales, sigma, r, spec, shift)
    a2 = (scales.alpha_e / scales.k) ** 2
    ke2 = (scales.k_e / scales.k) ** 2
    return a2 * a2 * s0 * s0 + ke2 * a2 * v * v
