"""Gamma, Bessel, and root-finding primitives used by the sharp constants.

All constants downstream are assembled in log space from ``log_gamma`` and
exponentiated once, so Gamma ratios with large arguments never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special
from scipy.optimize import brentq

from .errors import DomainError, SearchError

__all__ = [
    "BesselZero",
    "log_gamma",
    "bessel_j",
    "bessel_j_half_integer",
    "bessel_first_zero",
    "sphere_area",
]

_NU_MAX = 30.0
_X_MAX = 100.0


@dataclass(frozen=True)
class BesselZero:
    """First positive zero of J_nu, with the residual |J_nu(mu)| at the root."""

    order: float
    index: int
    value: float
    residual: float


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(special.gammaln(x))


def bessel_j(nu: float, x: float) -> float:
    """Bessel function J_nu(x) on the supported box nu in [0, 30], x in [0, 100]."""
    if not (0.0 <= nu <= _NU_MAX):
        raise DomainError(f"bessel_j order out of range [0, {_NU_MAX}]: {nu}")
    if not (0.0 <= x <= _X_MAX):
        raise DomainError(f"bessel_j argument out of range [0, {_X_MAX}]: {x}")
    return float(special.jv(nu, x))


def bessel_j_half_integer(nu: float, x: float) -> float:
    """Closed trigonometric form of J_nu for nu in {1/2, 3/2, 5/2}.

    Used as an independent cross-check of ``bessel_j``, never as the primary
    path.  Valid for x > 0.
    """
    if x <= 0:
        raise DomainError("half-integer closed form needs x > 0")
    c = math.sqrt(2.0 / (math.pi * x))
    if nu == 0.5:
        return c * math.sin(x)
    if nu == 1.5:
        return c * (math.sin(x) / x - math.cos(x))
    if nu == 2.5:
        return c * ((3.0 / x**2 - 1.0) * math.sin(x) - 3.0 * math.cos(x) / x)
    raise DomainError(f"no closed form stored for order {nu}")


def bessel_first_zero(nu: float) -> BesselZero:
    """First positive zero of J_nu, bracketed by a 0.1-step scan from nu + 1.

    The bracket is refined by Brent's method (bisection + secant) to ~1e-13.
    """
    if not (0.0 <= nu <= _NU_MAX):
        raise DomainError(f"order out of range [0, {_NU_MAX}]: {nu}")
    f = lambda x: special.jv(nu, x)
    a = nu + 1.0
    fa = f(a)
    step = 0.1
    b = a + step
    while b <= nu + 20.0 + step:
        fb = f(b)
        if fa * fb <= 0.0:
            break
        a, fa = b, fb
        b += step
    else:
        raise SearchError(f"no sign change of J_{nu} found in ({nu + 1}, {nu + 20})")
    mu = brentq(f, a, b, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    return BesselZero(order=nu, index=1, value=float(mu), residual=abs(f(mu)))


def sphere_area(N: int) -> float:
    """Surface measure of the unit sphere in R^N: 2 pi^{N/2} / Gamma(N/2)."""
    if N < 2:
        raise DomainError(f"sphere_area needs N >= 2, got {N}")
    return 2.0 * math.pi ** (N / 2.0) / math.exp(log_gamma(N / 2.0))
