"""Physical constants and electron kinematics.

Lengths are expressed in a caller-chosen unit, normally the free-space
wavelength (so ``k = 2*pi``) or metres.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError

__all__ = [
    "Constants",
    "CONSTANTS",
    "ElectronParams",
    "EvanescentScales",
    "electron_from_beta",
    "evanescent_scales",
]


@dataclass(frozen=True)
class Constants:
    """CODATA 2018 values in SI units."""

    q_e: float = 1.602176634e-19
    hbar: float = 1.054571817e-34
    eps0: float = 8.8541878128e-12
    c: float = 299792458.0
    m_e: float = 9.1093837015e-31
    alpha_fs: float = 7.2973525693e-3
    lambda_compton: float = 2.42631023867e-12

    def alpha_from_si(self) -> float:
        return self.q_e**2 / (4.0 * math.pi * self.eps0 * self.hbar * self.c)

    def compton_from_si(self) -> float:
        return 2.0 * math.pi * self.hbar / (self.m_e * self.c)


CONSTANTS = Constants()

if abs(CONSTANTS.alpha_from_si() / CONSTANTS.alpha_fs - 1.0) > 1e-9:
    raise RuntimeError("fine-structure constant inconsistent with the stored SI constants")
if abs(CONSTANTS.compton_from_si() / CONSTANTS.lambda_compton - 1.0) > 1e-9:
    raise RuntimeError("Compton wavelength inconsistent with the stored SI constants")

_SIGMA_UNITS = ("m", "lambda")


@dataclass(frozen=True)
class ElectronParams:
    """Free-electron kinematics.

    Parameters
    ----------
    beta : float
        Speed in units of c, 0 < beta < 1.
    gamma : float
        Lorentz factor, consistent with ``beta``.
    sigma : float or None
        Transverse beam waist (``|phi|^2 ~ exp(-2 r^2 / sigma^2)``). ``None``
        selects a point electron.
    sigma_unit : {"m", "lambda"}
        Unit in which ``sigma`` is stored.
    """

    beta: float
    gamma: float
    sigma: Optional[float] = None
    sigma_unit: str = "m"

    def __post_init__(self):
        if not (0.0 < self.beta < 1.0):
            raise DomainError(f"beta must lie in (0, 1), got {self.beta}")
        expected = 1.0 / math.sqrt((1.0 - self.beta) * (1.0 + self.beta))
        if abs(self.gamma / expected - 1.0) > 1e-9:
            raise DomainError("gamma inconsistent with beta")
        if self.sigma is not None and not self.sigma > 0.0:
            raise DomainError("sigma must be positive")
        if self.sigma_unit not in _SIGMA_UNITS:
            raise DomainError(f"sigma_unit must be one of {_SIGMA_UNITS}")

    @property
    def gamma_beta(self) -> float:
        return self.gamma * self.beta

    @property
    def de_broglie(self) -> float:
        """de Broglie wavelength in metres."""
        return CONSTANTS.lambda_compton / self.gamma_beta

    def sigma_over_lambda(self, lambda_metres: Optional[float] = None) -> Optional[float]:
        """Beam waist in units of the free-space wavelength.

        A waist stored in metres needs the physical wavelength ``lambda_metres``.
        """
        if self.sigma is None:
            return None
        if self.sigma_unit == "lambda":
            return self.sigma
        if lambda_metres is None or not lambda_metres > 0.0:
            raise DomainError("a waist given in metres needs the physical wavelength")
        return self.sigma / lambda_metres


def electron_from_beta(beta: float, sigma: Optional[float] = None, sigma_unit: str = "m") -> ElectronParams:
    """Build :class:`ElectronParams` from the speed ``beta = v/c``."""
    if not (0.0 < beta < 1.0):
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    gamma = 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))
    return ElectronParams(float(beta), gamma, sigma, sigma_unit)


@dataclass(frozen=True)
class EvanescentScales:
    """Wavenumbers of the electron near field.

    ``k`` is the free-space wavenumber ``2 pi / lambda_``, ``k_e = k / beta``
    the electron wavenumber along the trajectory and ``alpha_e = k / (gamma
    beta)`` the transverse decay constant. ``omega`` is ``c k`` and is only
    meaningful when ``lambda_`` is in metres.
    """

    lambda_: float
    omega: float
    k: float
    k_e: float
    alpha_e: float
    beta: float = field(default=float("nan"))


def evanescent_scales(electron: ElectronParams, lambda_: float = 1.0) -> EvanescentScales:
    """Near-field scales of ``electron`` at free-space wavelength ``lambda_``."""
    if not lambda_ > 0.0:
        raise DomainError("lambda_ must be positive")
    k = 2.0 * math.pi / lambda_
    alpha_e = k * math.sqrt((1.0 - electron.beta) * (1.0 + electron.beta)) / electron.beta
    return EvanescentScales(lambda_, CONSTANTS.c * k, k, k / electron.beta, alpha_e, electron.beta)
