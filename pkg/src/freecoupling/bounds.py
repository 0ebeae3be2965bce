"""Upper bounds on the electron-photon coupling strength.

The bound factorises into the fine-structure constant, a material figure of
merit, the interaction length in wavelengths and the geometric factor:

    g_ub^2 = alpha_fs * M * (L / lambda) * duty * g_geo^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .materials import Drude, Lorentz, LossyPoint, Material, MaterialFactor, continuum_factor, material_factor
from .numerics import QuadratureSpec
from .physics import CONSTANTS, ElectronParams, evanescent_scales
from .regions import CylinderExterior, DesignRegion, GeometricFactor, geometric_factor

__all__ = [
    "CouplingBound",
    "InteractionLimit",
    "coupling_bound",
    "continuum_bound_density",
    "max_interaction_length",
]


@dataclass(frozen=True)
class CouplingBound:
    """Bound on ``|g|^2`` with its factors.

    ``per_unit_length`` is ``g_ub_sq / (L / lambda)`` and ``log_g_ub_sq`` stays
    finite when the geometric factor underflows.
    """

    g_ub_sq: float
    log_g_ub_sq: float
    prefactor: float
    material: MaterialFactor
    length_term: float
    geo: GeometricFactor
    per_unit_length: float

    @property
    def g_ub(self) -> float:
        return math.sqrt(self.g_ub_sq)


@dataclass(frozen=True)
class InteractionLimit:
    """Diffraction-limited interaction length of a Gaussian beam.

    ``theta`` is the far-field divergence half-angle and ``L_max`` the length
    (in metres) over which a beam focused to its waist stays within ``d`` of
    the axis.
    """

    theta: float
    L_max: float
    L_max_over_lambda: Optional[float] = None
    ultimate_g_ub_sq: Optional[float] = None


def _sigma_over_lambda(electron: ElectronParams, lambda_: float, lambda_metres: Optional[float]):
    if electron.sigma is None:
        return None
    if electron.sigma_unit == "lambda":
        return electron.sigma
    return electron.sigma_over_lambda(lambda_metres if lambda_metres is not None else lambda_)


def _geo(region, electron, lambda_, spec, lambda_metres, geo_method):
    if not lambda_ > 0.0:
        raise DomainError("lambda_ must be positive")
    scales = evanescent_scales(electron, lambda_)
    sigma = _sigma_over_lambda(electron, lambda_, lambda_metres)
    if sigma is None and geo_method == "auto" and isinstance(region, CylinderExterior):
        geo_method = "closed_form"
    return scales, geometric_factor(region, scales, sigma, spec, method=geo_method)


def coupling_bound(material: Material, region: DesignRegion, electron: ElectronParams, lambda_: float = 1.0,
                   L: float = 1.0, spec: Optional[QuadratureSpec] = None, omega_m: Optional[float] = None,
                   lambda_metres: Optional[float] = None, geo_method: str = "auto") -> CouplingBound:
    """Upper bound on the coupling to a single mode.

    Parameters
    ----------
    material : NonDispersive, Lorentz or Drude
    region : DesignRegion
        Distances in units of the wavelength.
    electron : ElectronParams
    lambda_, L : float
        Free-space wavelength and interaction length, in the same unit.
    omega_m : float, optional
        Mode frequency in the unit of the material's ``omega_p``. Defaults to
        ``2 pi c / lambda_``, which assumes ``lambda_`` in metres.
    lambda_metres : float, optional
        Physical wavelength, needed only for a beam waist given in metres
        when ``lambda_`` is not itself in metres.
    geo_method : str
        Passed to :func:`geometric_factor`. ``"auto"`` uses the closed form
        for a point electron outside a cylinder.
    """
    if isinstance(material, LossyPoint):
        raise DomainError("a lossy material bounds the spectral density; use continuum_bound_density")
    if not L > 0.0:
        raise DomainError("L must be positive")
    scales, geo = _geo(region, electron, lambda_, spec, lambda_metres, geo_method)
    if isinstance(material, (Lorentz, Drude)) and omega_m is None:
        omega_m = scales.omega
    mf = material_factor(material, omega_m)
    prefactor = CONSTANTS.alpha_fs * mf.prefactor_multiplier
    length_term = (L / lambda_) * region.duty
    log_per_length = math.log(prefactor * mf.value * region.duty) + geo.log_value
    log_g = log_per_length + math.log(L / lambda_)
    return CouplingBound(math.exp(log_g), log_g, prefactor, mf, length_term, geo, math.exp(log_per_length))


def continuum_bound_density(material: LossyPoint, region: DesignRegion, electron: ElectronParams,
                            lambda_: float = 1.0, L: float = 1.0, omega: Optional[float] = None,
                            spec: Optional[QuadratureSpec] = None,
                            lambda_metres: Optional[float] = None) -> float:
    """Bound on the coupling spectral density ``|g(omega)|^2`` of a lossy medium.

    ``alpha_fs * 2 / (pi omega) * |chi|^2 / Im chi * (L / lambda) * duty * g_geo^2``;
    the result has the inverse unit of ``omega``. ``omega`` defaults to
    ``2 pi c / lambda_``.
    """
    if not isinstance(material, LossyPoint):
        raise DomainError("continuum bound needs a LossyPoint material")
    scales, geo = _geo(region, electron, lambda_, spec, lambda_metres, "auto")
    if omega is None:
        omega = scales.omega
    if not omega > 0.0:
        raise DomainError("omega must be positive")
    mf = continuum_factor(material)
    return CONSTANTS.alpha_fs * 2.0 / (math.pi * omega) * mf.value * (L / lambda_) * region.duty * geo.value


def max_interaction_length(electron: ElectronParams, d: float, lambda_: Optional[float] = None,
                           material: Optional[Material] = None, region: Optional[DesignRegion] = None,
                           spec: Optional[QuadratureSpec] = None, omega_m: Optional[float] = None) -> InteractionLimit:
    """Longest interaction length allowed by diffraction of a Gaussian beam.

    The beam of waist ``sigma`` diverges with half-angle
    ``theta = lambda_e / (pi sigma)``; focusing it at the centre of a
    structure of clearance ``d`` gives ``L_max = 2 d / theta``. ``d``,
    ``lambda_`` and a waist in metres must all be in metres. When
    ``material`` is given (with ``lambda_``) the coupling bound at
    ``L = L_max`` is reported as ``ultimate_g_ub_sq``; ``region`` defaults to
    the exterior of a cylinder of radius ``d``.
    """
    if electron.sigma is None:
        raise DomainError("the interaction limit needs a beam waist")
    if not d > 0.0:
        raise DomainError("d must be positive")
    if electron.sigma_unit == "lambda":
        if lambda_ is None:
            raise DomainError("a waist in wavelengths needs lambda_ in metres")
        sigma = electron.sigma * lambda_
    else:
        sigma = electron.sigma
    theta = electron.de_broglie / (math.pi * sigma)
    l_max = 2.0 * d / theta
    l_over = l_max / lambda_ if lambda_ is not None else None
    ultimate = None
    if material is not None:
        if lambda_ is None:
            raise DomainError("the ultimate bound needs lambda_")
        region = region or CylinderExterior(d / lambda_)
        point = ElectronParams(electron.beta, electron.gamma)
        if omega_m is None:
            omega_m = 2.0 * math.pi * CONSTANTS.c / lambda_
        ultimate = coupling_bound(material, region, point, 1.0, l_over, spec, omega_m).g_ub_sq
    return InteractionLimit(theta, l_max, l_over, ultimate)
