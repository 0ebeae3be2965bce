"""Material response factors entering the coupling bound.

Each material model reduces to a dimensionless figure of merit that
multiplies the geometric factor. For a lossless material with
susceptibility chi this is ``chi^2 / (1 + chi)``; for Lorentz and Drude
media the resonant response is folded into an effective factor at the mode
frequency; for lossy materials the bound on the spectral density uses
``|chi|^2 / Im chi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DomainError, PoleError

__all__ = [
    "NonDispersive",
    "Lorentz",
    "Drude",
    "LossyPoint",
    "Material",
    "MaterialFactor",
    "nondispersive_factor",
    "lorentz_factor",
    "drude_factor",
    "continuum_factor",
    "material_factor",
]


@dataclass(frozen=True)
class NonDispersive:
    """Lossless, frequency-independent susceptibility ``chi > 0``."""

    chi: float

    def __post_init__(self):
        if not (self.chi > 0.0 and math.isfinite(self.chi)):
            raise DomainError("chi must be positive and finite")


@dataclass(frozen=True)
class Lorentz:
    """Single lossless Lorentz oscillator on a background permittivity.

    ``eps(w) = eps_B (1 + omega_p^2 / (omega_0^2 - w^2))``; frequencies share
    one arbitrary unit.
    """

    eps_B: float
    omega_p: float
    omega_0: float

    def __post_init__(self):
        if not self.eps_B >= 1.0:
            raise DomainError("eps_B must be at least 1")
        if not self.omega_p > 0.0:
            raise DomainError("omega_p must be positive")
        if not self.omega_0 >= 0.0:
            raise DomainError("omega_0 must be non-negative")


@dataclass(frozen=True)
class Drude:
    """Lossless free-electron metal, ``eps(w) = 1 - omega_p^2 / w^2``."""

    omega_p: float

    def __post_init__(self):
        if not self.omega_p > 0.0:
            raise DomainError("omega_p must be positive")

    def as_lorentz(self) -> Lorentz:
        return Lorentz(1.0, self.omega_p, 0.0)


@dataclass(frozen=True)
class LossyPoint:
    """Complex susceptibility at one frequency, ``Im chi > 0``."""

    chi_re: float
    chi_im: float

    def __post_init__(self):
        if not self.chi_im > 0.0:
            raise DomainError("chi_im must be positive")


Material = Union[NonDispersive, Lorentz, Drude, LossyPoint]


@dataclass(frozen=True)
class MaterialFactor:
    """Dimensionless material figure of merit.

    ``bound_kind`` is ``"single_mode"`` for a bound on one mode and
    ``"continuum"`` for a bound on the spectral density. The Lorentz factor
    carries a prefactor multiplier of 2 because only half of the stored
    energy sits in the electric field at resonance.
    """

    value: float
    bound_kind: str
    prefactor_multiplier: float = 1.0


def nondispersive_factor(chi: float) -> MaterialFactor:
    """``chi^2 / (1 + chi)`` for a lossless, non-dispersive material."""
    m = NonDispersive(chi)
    return MaterialFactor(m.chi * m.chi / (1.0 + m.chi), "single_mode", 1.0)


def lorentz_factor(material: Lorentz, omega_m: float) -> MaterialFactor:
    """Effective factor of a Lorentz medium at mode frequency ``omega_m``."""
    if isinstance(material, Drude):
        material = material.as_lorentz()
    if not omega_m > 0.0:
        raise DomainError("omega_m must be positive")
    detuning = material.omega_0**2 - omega_m**2
    if detuning == 0.0 or abs(detuning) <= 1e-12 * max(material.omega_0, omega_m) ** 2:
        raise PoleError("omega_m coincides with the oscillator resonance")
    wp2 = material.omega_p**2
    eps_b = material.eps_B
    num = (eps_b - 1.0 + eps_b * wp2 / detuning) ** 2
    den = eps_b + eps_b * (material.omega_0**2 + omega_m**2) * wp2 / detuning**2
    return MaterialFactor(num / den, "single_mode", 2.0)


def drude_factor(material: Drude, omega_m: float) -> MaterialFactor:
    """Lorentz factor with ``eps_B = 1`` and ``omega_0 = 0``."""
    return lorentz_factor(material.as_lorentz(), omega_m)


def continuum_factor(material: LossyPoint) -> MaterialFactor:
    """``|chi|^2 / Im chi`` for the spectral-density bound."""
    return MaterialFactor((material.chi_re**2 + material.chi_im**2) / material.chi_im, "continuum", 1.0)


def material_factor(material: Material, omega_m: Optional[float] = None) -> MaterialFactor:
    """Dispatch to the factor of the given material model."""
    if isinstance(material, NonDispersive):
        return nondispersive_factor(material.chi)
    if isinstance(material, Drude):
        if omega_m is None:
            raise DomainError("Drude factor needs the mode frequency")
        return drude_factor(material, omega_m)
    if isinstance(material, Lorentz):
        if omega_m is None:
            raise DomainError("Lorentz factor needs the mode frequency")
        return lorentz_factor(material, omega_m)
    if isinstance(material, LossyPoint):
        return continuum_factor(material)
    raise DomainError(f"unsupported material {material!r}")
