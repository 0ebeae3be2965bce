"""Spectral coupling density from discrete lossy modes, and the effective mode count.

Each mode of frequency ``omega_m`` and decay rate ``gamma_d`` contributes a
Lorentzian of unit area (times ``g_m^2``) to the coupling spectrum, modulated
by the phase-matching factor ``sinc^2((k_m - omega/v) L / 2)`` relative to its
value at ``omega_m``. For an extended waveguide the number of modes that
couple within the phase-matching window is

    N_eff = L / (2 pi) * integral of sinc^2(phi(q) L / 2) dq,

with ``phi(q) = k - omega(k)/v`` expanded about the phase-matched point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import AmbiguousRegimeError, BandwidthOverlapError, DomainError
from .numerics import QuadratureSpec, integrate_interval

__all__ = [
    "SpectrumMode",
    "DispersionModel",
    "NeffResult",
    "lorentzian_weight",
    "spectrum_density",
    "peak_integral",
    "n_eff_numeric",
    "n_eff_closed",
    "CUBIC_NEFF_CONSTANT",
]

# Prefactor of the cubic-dispersion closed form (the exact value of the
# underlying integral gives 0.8052).
CUBIC_NEFF_CONSTANT = 0.8
QUADRATIC_NEFF_CONSTANT = 4.0 / (3.0 * math.sqrt(math.pi))
REGIME_DOMINANCE = 30.0
REGIME_ENVELOPE = 1e-3


def _sinc(x):
    return np.sinc(np.asarray(x) / np.pi)


@dataclass(frozen=True)
class SpectrumMode:
    """A weakly damped mode.

    ``g_m_sq`` is the single-mode coupling ``|g_m|^2``, ``k_m`` the mode
    wavenumber along the beam and ``L`` the interaction length. ``u0`` is the
    on-axis mode amplitude, recorded for reference; it enters only through
    ``g_m_sq``.
    """

    omega_m: float
    gamma_d: float
    k_m: float
    L: float
    g_m_sq: float
    u0: complex = 1.0

    def __post_init__(self):
        if not self.omega_m > 0.0:
            raise DomainError("omega_m must be positive")
        if not self.gamma_d > 0.0:
            raise DomainError("gamma_d must be positive")
        if self.gamma_d / self.omega_m > 1e-2:
            raise DomainError("gamma_d / omega_m must not exceed 1e-2")
        if not self.L > 0.0:
            raise DomainError("L must be positive")
        if not self.g_m_sq >= 0.0:
            raise DomainError("g_m_sq must be non-negative")


@dataclass(frozen=True)
class DispersionModel:
    """Mode dispersion ``omega(k)`` expanded to third order about ``k0``."""

    k0: float
    omega0: float
    v_g: float
    d2w_dk2: float = 0.0
    d3w_dk3: float = 0.0

    def omega(self, k):
        q = np.asarray(k, dtype=float) - self.k0
        return self.omega0 + self.v_g * q + 0.5 * self.d2w_dk2 * q * q + self.d3w_dk3 * q**3 / 6.0

    def phase_mismatch_coefficients(self, v: float):
        """Coefficients ``(a1, a2, a3)`` of ``phi(q) = a1 q + a2 q^2 + a3 q^3``."""
        return 1.0 - self.v_g / v, -self.d2w_dk2 / (2.0 * v), -self.d3w_dk3 / (6.0 * v)


@dataclass(frozen=True)
class NeffResult:
    value: float
    regime: str


def lorentzian_weight(omega, omega_m: float, gamma_d: float):
    """``(gamma_d/2) / ((omega - omega_m)^2 + gamma_d^2/4)``; its integral over omega is pi."""
    w = np.asarray(omega, dtype=float)
    out = 0.5 * gamma_d / ((w - omega_m) ** 2 + 0.25 * gamma_d * gamma_d)
    return float(out) if out.ndim == 0 else out


def spectrum_density(modes: Sequence[SpectrumMode], omega, v: float):
    """Coupling spectral density ``|g(omega)|^2`` of a set of damped modes.

    On resonance and at phase matching a single mode contributes
    ``2 g_m^2 / (pi gamma_d)``.
    """
    if not v > 0.0:
        raise DomainError("v must be positive")
    w = np.asarray(omega, dtype=float)
    total = np.zeros_like(w)
    for m in modes:
        ref = _sinc((m.k_m - m.omega_m / v) * m.L / 2.0) ** 2
        if ref == 0.0:
            continue
        phase = _sinc((m.k_m - w / v) * m.L / 2.0) ** 2 / ref
        total = total + m.g_m_sq / math.pi * lorentzian_weight(w, m.omega_m, m.gamma_d) * phase
    return float(total) if total.ndim == 0 else total


def peak_integral(modes: Sequence[SpectrumMode], m_index: int, delta_omega: float, v: float,
                  spec: Optional[QuadratureSpec] = None) -> float:
    """Integral of the spectral density over ``omega_m +- delta_omega / 2``.

    Raises :class:`BandwidthOverlapError` when another resonance falls in the
    window. For a single mode the result approaches ``g_m^2`` as the window
    widens.
    """
    spec = spec or QuadratureSpec(relative_tolerance=1e-10)
    target = modes[m_index]
    if not delta_omega > 0.0:
        raise DomainError("delta_omega must be positive")
    lo = target.omega_m - 0.5 * delta_omega
    hi = target.omega_m + 0.5 * delta_omega
    for j, m in enumerate(modes):
        if j != m_index and lo <= m.omega_m <= hi:
            raise BandwidthOverlapError(f"mode {j} at {m.omega_m} lies inside the window [{lo}, {hi}]")
    g = target.gamma_d
    pts = [target.omega_m + s * g * f for s in (-1.0, 1.0) for f in (0.5, 2.0, 8.0, 32.0, 128.0)]
    return integrate_interval(lambda w: spectrum_density(modes, w, v), lo, hi, spec,
                              breakpoints=[target.omega_m] + pts).value


def _check_phase_matched(model: DispersionModel, v: float):
    if not v > 0.0:
        raise DomainError("v must be positive")
    if abs(model.omega0 - v * model.k0) > 1e-9 * max(abs(model.omega0), abs(v * model.k0)):
        raise DomainError("model is not phase matched: omega0 must equal v k0")


def n_eff_numeric(model: DispersionModel, v: float, L: float, spec: Optional[QuadratureSpec] = None,
                  cutoff: float = 400.0) -> float:
    """Effective number of modes by direct quadrature of the sinc^2 integral.

    The integral is evaluated exactly while ``|phi| L / 2 < cutoff`` and the
    remaining tails use the oscillation-averaged integrand
    ``2 / (phi L)^2``.
    """
    spec = spec or QuadratureSpec(relative_tolerance=1e-9)
    _check_phase_matched(model, v)
    if not L > 0.0:
        raise DomainError("L must be positive")
    a = model.phase_mismatch_coefficients(v)
    if all(c == 0.0 for c in a):
        raise DomainError("dispersion is exactly phase matched at every k; N_eff diverges")

    def phi(q):
        return a[0] * q + a[1] * q * q + a[2] * q**3

    target = 2.0 * cutoff / L
    # Smallest |q| beyond which every term together exceeds the cutoff, then
    # pushed out until |phi| itself does on both sides.
    q_max = _solve_magnitude(a, target)
    for _ in range(200):
        if abs(phi(q_max)) >= target and abs(phi(-q_max)) >= target and _monotone_beyond(a, q_max):
            break
        q_max *= 1.5
    else:
        raise DomainError("phase mismatch does not grow away from the matched point")

    def core(q):
        return _sinc(phi(q) * L / 2.0) ** 2

    n_osc = int(min(4000, max(8, 4.0 * cutoff)))
    pts = list(np.linspace(-q_max, q_max, n_osc + 1)[1:-1])
    inner = integrate_interval(core, -q_max, q_max, QuadratureSpec(spec.relative_tolerance, 0.0, 200000),
                               breakpoints=pts).value

    def tail(t, sign):
        q = sign * q_max / t
        return 2.0 / (phi(q) * L) ** 2 * q_max / (t * t)

    tails = sum(integrate_interval(lambda t, s=s: tail(np.maximum(t, 1e-300), s), 0.0, 1.0, spec).value
                for s in (-1.0, 1.0))
    return L / (2.0 * math.pi) * (inner + tails)


def _solve_magnitude(a, target):
    # Positive root of |a1| q + |a2| q^2 + |a3| q^3 = target.
    c1, c2, c3 = (abs(x) for x in a)
    lo, hi = 0.0, 1.0
    while c1 * hi + c2 * hi * hi + c3 * hi**3 < target:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if c1 * mid + c2 * mid * mid + c3 * mid**3 < target:
            lo = mid
        else:
            hi = mid
    return hi


def _monotone_beyond(a, q):
    # phi'(q) = a1 + 2 a2 q + 3 a3 q^2 keeps one sign for |q'| >= q when
    # its real zeros lie inside (-q, q).
    roots = np.roots([3.0 * a[2], 2.0 * a[1], a[0]]) if (a[2] or a[1]) else np.array([])
    real = roots[np.abs(roots.imag) < 1e-12].real if roots.size else roots
    return bool(np.all(np.abs(real) < q))


def n_eff_closed(model: DispersionModel, v: float, L: float) -> NeffResult:
    """Closed-form effective mode count in the regime of the dominant dispersion term.

    The regime is the term (linear, quadratic or cubic in ``q``) whose
    magnitude exceeds each other term by at least a factor of 30 at the
    ``q`` where the sinc^2 envelope has fallen to 1e-3.
    """
    _check_phase_matched(model, v)
    if not L > 0.0:
        raise DomainError("L must be positive")
    a = model.phase_mismatch_coefficients(v)
    if all(c == 0.0 for c in a):
        raise AmbiguousRegimeError("all dispersion terms vanish")
    q_star = _solve_magnitude(a, 2.0 * math.sqrt(1.0 / REGIME_ENVELOPE) / L)
    terms = np.array([abs(a[0]) * q_star, abs(a[1]) * q_star**2, abs(a[2]) * q_star**3])
    j = int(np.argmax(terms))
    others = np.delete(terms, j)
    if np.any(others * REGIME_DOMINANCE > terms[j]):
        raise AmbiguousRegimeError(
            f"no dominant dispersion term: magnitudes {terms.tolist()} at q = {q_star:.3e}"
        )
    if j == 0:
        return NeffResult(1.0 / abs(a[0]), "linear")
    if j == 1:
        return NeffResult(QUADRATIC_NEFF_CONSTANT * abs(model.d2w_dk2 / v) ** -0.5 * L**0.5, "quadratic")
    return NeffResult(CUBIC_NEFF_CONSTANT * abs(model.d3w_dk3 / v) ** (-1.0 / 3.0) * L ** (2.0 / 3.0), "cubic")
