"""Special functions, adaptive quadrature and bracketed root finding.

The Bessel functions are thin validated wrappers around ``scipy.special``.
Quadrature is a vectorised, globally adaptive Gauss-Kronrod (7, 15) rule with
an exponential-tail truncation for semi-infinite radial integrals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy import optimize, special

from .errors import ConvergenceError, DomainError, NoSignChangeError

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "RootBracket",
    "RootResult",
    "bessel_k",
    "bessel_i",
    "bessel_jy",
    "log_bessel_i",
    "log_bessel_k",
    "integrate_interval",
    "integrate_semiinfinite_radial",
    "find_root_bracketed",
    "sign_change_brackets",
    "golden_section_maximize",
]

# Kronrod 15-point abscissae (non-negative half) and weights.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Embedded 7-point Gauss weights, attached to _XK[1], _XK[3], _XK[5], _XK[7].
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for the adaptive integrator.

    Parameters
    ----------
    relative_tolerance : float
        Target relative error, in (0, 1e-3].
    absolute_floor : float
        Absolute error accepted when the integral is close to zero. Also the
        bound imposed on the analytic tail of semi-infinite integrals.
    max_subdivisions : int
        Maximum number of panels before giving up.
    """

    relative_tolerance: float = 1e-10
    absolute_floor: float = 1e-15
    max_subdivisions: int = 4000

    def __post_init__(self):
        if not (0.0 < self.relative_tolerance <= 1e-3):
            raise DomainError("relative_tolerance must lie in (0, 1e-3]")
        if not self.absolute_floor >= 0.0:
            raise DomainError("absolute_floor must be non-negative")
        if int(self.max_subdivisions) < 8:
            raise DomainError("max_subdivisions must be at least 8")


class QuadratureResult(NamedTuple):
    value: float
    error: float


@dataclass(frozen=True)
class RootBracket:
    """Interval ``[lo, hi]`` known to contain a sign change of a residual.

    ``tolerance`` bounds the absolute residual ``|f(x*)|`` accepted at the
    root, so ``f`` should be normalised (a relative residual).
    """

    lo: float
    hi: float
    tolerance: float = 1e-9

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError("bracket endpoints must be finite")
        if not self.lo < self.hi:
            raise DomainError(f"bracket must satisfy lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tolerance > 0.0:
            raise DomainError("bracket tolerance must be positive")


class RootResult(NamedTuple):
    x: float
    residual: float
    iterations: int


# ---------------------------------------------------------------- Bessel


def _positive(x, name="x"):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0.0)):
        raise DomainError(f"{name} must be strictly positive")
    return x


def _out(y):
    return float(y) if np.ndim(y) == 0 else y


def bessel_k(order: int, x, scaled: bool = False):
    """Modified Bessel function of the second kind ``K_order(x)`` for x > 0.

    With ``scaled=True`` returns ``exp(x) K_order(x)``, which stays finite for
    arguments where ``K`` underflows.
    """
    x = _positive(x)
    if order == 0:
        y = special.k0e(x) if scaled else special.k0(x)
    elif order == 1:
        y = special.k1e(x) if scaled else special.k1(x)
    else:
        y = special.kve(order, x) if scaled else special.kv(order, x)
    return _out(y)


def bessel_i(order: int, x, scaled: bool = False):
    """Modified Bessel function of the first kind ``I_order(x)`` for x >= 0.

    With ``scaled=True`` returns ``exp(-x) I_order(x)``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(~(x >= 0.0)):
        raise DomainError("x must be non-negative")
    if order == 0:
        y = special.i0e(x) if scaled else special.i0(x)
    elif order == 1:
        y = special.i1e(x) if scaled else special.i1(x)
    else:
        y = special.ive(order, x) if scaled else special.iv(order, x)
    return _out(y)


def bessel_jy(kind: str, order: int, x):
    """Ordinary Bessel functions ``J_order(x)`` (x >= 0) or ``Y_order(x)`` (x > 0)."""
    if kind == "J":
        x = np.asarray(x, dtype=float)
        if np.any(~(x >= 0.0)):
            raise DomainError("x must be non-negative")
        y = {0: special.j0, 1: special.j1}.get(order, lambda t: special.jv(order, t))(x)
    elif kind == "Y":
        x = _positive(x)
        y = {0: special.y0, 1: special.y1}.get(order, lambda t: special.yv(order, t))(x)
    else:
        raise DomainError(f"kind must be 'J' or 'Y', got {kind!r}")
    return _out(y)


def log_bessel_i(order: int, x):
    """``log I_order(x)`` without overflow for large x."""
    x = np.asarray(x, dtype=float)
    return _out(np.log(bessel_i(order, x, scaled=True)) + x)


def log_bessel_k(order: int, x):
    """``log K_order(x)`` without underflow for large x."""
    x = np.asarray(x, dtype=float)
    return _out(np.log(bessel_k(order, x, scaled=True)) - x)


# ------------------------------------------------------------ quadrature


def _gk15(f, lo, hi):
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    x = c[:, None] + h[:, None] * NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise ConvergenceError("integrand returned a non-finite value")
    kron = h * (fx @ KRONROD_WEIGHTS)
    gauss = h * (fx @ GAUSS_WEIGHTS)
    roundoff = 50.0 * _EPS * (np.abs(h) * (np.abs(fx) @ KRONROD_WEIGHTS))
    return kron, np.maximum(np.abs(kron - gauss), roundoff)


def integrate_interval(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: Optional[QuadratureSpec] = None,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod integral of a vectorised ``f`` over ``[a, b]``.

    ``f`` receives a 1-D array of abscissae and must return values of the
    same shape. Panels with the largest error estimates are bisected until
    the summed estimate falls below ``max(absolute_floor, rtol * |I|)``.
    """
    spec = spec or QuadratureSpec()
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite")
    if a == b:
        return QuadratureResult(0.0, 0.0)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    inner = sorted({float(p) for p in breakpoints if a < p < b})
    edges = np.array([a, *inner, b])
    lo, hi = edges[:-1], edges[1:]
    val, err = _gk15(f, lo, hi)
    while True:
        total = val.sum()
        err_total = err.sum()
        tol = max(spec.absolute_floor, spec.relative_tolerance * abs(total))
        if err_total <= tol:
            return QuadratureResult(sign * float(total), float(err_total))
        splittable = (hi - lo) > 64.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        if not np.any(splittable):
            raise ConvergenceError(
                f"quadrature stalled at panel resolution limit (error {err_total:.3e}, target {tol:.3e})"
            )
        order = np.argsort(np.where(splittable, err, -1.0))[::-1]
        remaining = err_total - np.cumsum(err[order])
        count = int(np.searchsorted(-remaining, -0.5 * tol)) + 1
        pick = order[:count]
        pick = pick[splittable[pick]]
        if lo.size + pick.size > spec.max_subdivisions:
            raise ConvergenceError(
                f"quadrature exceeded {spec.max_subdivisions} panels (error {err_total:.3e}, target {tol:.3e})"
            )
        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        new_val, new_err = _gk15(f, new_lo, new_hi)
        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])


def _radial_breakpoints(a, decay_scale, b):
    pts = []
    if a > 0.0 and a < decay_scale:
        r = 2.0 * a
        while r < a + decay_scale:
            pts.append(r)
            r *= 2.0
    elif a == 0.0:
        pts.extend(decay_scale * 2.0 ** -np.arange(1, 12))
    step = decay_scale
    while a + step < b:
        pts.append(a + step)
        step *= 2.0
    return pts


def integrate_semiinfinite_radial(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    decay_scale: float,
    spec: Optional[QuadratureSpec] = None,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """Integral of ``f`` over ``[a, inf)`` for an exponentially decaying ``f``.

    ``decay_scale`` is the e-folding length of ``|f|``. The range is truncated
    at ``b`` where the exponential tail bound ``|f(b)| * decay_scale`` is below
    ``max(absolute_floor, 1e-3 * rtol * scale)``, with ``scale`` the size of the
    integrand times ``decay_scale`` near the lower limit.
    """
    spec = spec or QuadratureSpec()
    if not decay_scale > 0.0:
        raise DomainError("decay_scale must be positive")
    if not a >= 0.0:
        raise DomainError("lower limit must be non-negative")
    probe = a + decay_scale * np.array([1e-3, 0.1, 0.5, 1.0, 2.0])
    scale = float(np.max(np.abs(f(probe)))) * decay_scale
    target = max(spec.absolute_floor, 1e-3 * spec.relative_tolerance * scale)
    n = 40.0
    while True:
        b = a + n * decay_scale
        ends = b - decay_scale * np.array([0.0, 0.25, 0.5])
        tail = float(np.max(np.abs(f(ends)))) * decay_scale
        if tail <= target:
            break
        n *= 1.25
        if n > 5000.0:
            raise ConvergenceError("integrand does not decay on the stated decay_scale")
    pts = list(breakpoints) + _radial_breakpoints(a, decay_scale, b)
    value, err = integrate_interval(f, a, b, spec, pts)
    return QuadratureResult(value, err + tail)


# ---------------------------------------------------------- root finding


def find_root_bracketed(f: Callable[[float], float], bracket: RootBracket, maxiter: int = 200) -> RootResult:
    """Root of a scalar residual inside a sign-changing bracket.

    Uses Brent's method, which falls back to bisection whenever the
    interpolation step misbehaves. The returned root is checked against
    ``bracket.tolerance``; a sign change produced by a pole rather than a
    zero fails that check and raises :class:`ConvergenceError`.
    """
    flo = float(f(bracket.lo))
    fhi = float(f(bracket.hi))
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise NoSignChangeError("residual is not finite at the bracket ends")
    if flo == 0.0:
        return RootResult(bracket.lo, 0.0, 0)
    if fhi == 0.0:
        return RootResult(bracket.hi, 0.0, 0)
    if np.sign(flo) == np.sign(fhi):
        raise NoSignChangeError(
            f"no sign change on [{bracket.lo}, {bracket.hi}]: f = {flo:.3e}, {fhi:.3e}"
        )
    x, info = optimize.brentq(
        f, bracket.lo, bracket.hi, xtol=1e-300, rtol=4.0 * _EPS, maxiter=maxiter, full_output=True, disp=False
    )
    if not info.converged:
        raise ConvergenceError(f"root iteration did not converge: {info.flag}")
    # The sign change straddles x; keep whichever neighbour has the smaller residual.
    candidates = [x, np.nextafter(x, bracket.lo), np.nextafter(x, bracket.hi)]
    values = [abs(float(f(c))) for c in candidates]
    best = int(np.argmin(values))
    if not values[best] <= bracket.tolerance:
        raise ConvergenceError(
            f"residual {values[best]:.3e} at x = {candidates[best]!r} exceeds {bracket.tolerance:.1e}"
        )
    return RootResult(float(candidates[best]), values[best], info.iterations)


def sign_change_brackets(grid: np.ndarray, values: np.ndarray) -> list:
    """Adjacent grid intervals ``(lo, hi)`` over which finite values change sign."""
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    s = np.sign(values)
    ok = np.isfinite(values)
    idx = np.nonzero(ok[:-1] & ok[1:] & (s[:-1] * s[1:] <= 0) & ((s[:-1] != 0) | (s[1:] != 0)))[0]
    out = []
    for i in idx:
        if s[i] == 0 and out and out[-1][1] == grid[i]:
            continue
        out.append((float(grid[i]), float(grid[i + 1])))
    return out


def golden_section_maximize(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-10):
    """Maximum of a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > xtol * max(1.0, abs(a) + abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)
