"""First Dirichlet eigenvalue of the radial p-Laplacian on the unit ball.

The radial equation (r^{N-1} |Phi'|^{p-2} Phi')' + lam r^{N-1} |Phi|^{p-2} Phi = 0
with Phi(0) = 1, Phi'(0) = 0 is integrated as a first-order system in
(Phi, w = r^{N-1}|Phi'|^{p-2}Phi') from a series start at r = delta, and lam
is found by shooting on the sign of Phi(1).  For p = 2 this reproduces the
squared Bessel zero j_{N/2-1,1}^2.
"""

from __future__ import annotations

import functools
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .. import specfun, transplant
from ..errors import DomainError, SearchError

__all__ = ["plap_first_eigenvalue", "plap_eigenfunction"]

_DELTA = 1e-6


def _series_start(N: int, p: float, lam: float):
    pp = p / (p - 1.0)
    c = (lam / N) ** (1.0 / (p - 1.0)) / pp
    phi0 = 1.0 - c * _DELTA ** pp
    w0 = -((c * pp) ** (p - 1.0)) * _DELTA ** N
    return phi0, w0, c


def _integrate(N: int, p: float, lam: float, dense: bool = False):
    phi0, w0, _ = _series_start(N, p, lam)

    def rhs(r, y):
        phi, w = y
        dphi = math.copysign(abs(w / r ** (N - 1)) ** (1.0 / (p - 1.0)), w)
        dw = -lam * r ** (N - 1) * abs(phi) ** (p - 2.0) * phi
        return (dphi, dw)

    def crossing(r, y):
        return y[0]

    crossing.terminal = True
    crossing.direction = -1.0
    return solve_ivp(rhs, (_DELTA, 1.0), (phi0, w0), method="DOP853",
                     rtol=1e-12, atol=1e-14, dense_output=dense,
                     events=crossing)


def _shoot(N: int, p: float, lam: float) -> float:
    """Positive while Phi stays positive up to r=1, negative past the
    first eigenvalue (interior zero or negative endpoint value)."""
    sol = _integrate(N, p, lam)
    if sol.t_events[0].size:
        r0 = sol.t_events[0][0]
        if r0 < 1.0 - 1e-13:
            return -(1.0 - r0)
        return 0.0
    return sol.y[0, -1]


@functools.lru_cache(maxsize=None)
def plap_first_eigenvalue(N: int, p: float, tol: float = 1e-11) -> float:
    """lambda_1 of -Delta_p on the unit ball in R^N, 1 < p <= N."""
    if not (1.0 < p <= N):
        raise DomainError(f"need 1 < p <= N, got p={p}, N={N}")
    anchor = specfun.bessel_first_zero(N / 2.0 - 1.0).value ** 2
    lo, hi = 0.5 * anchor, 2.0 * anchor
    for _ in range(60):
        if _shoot(N, p, lo) > 0:
            break
        lo *= 0.5
    else:
        raise SearchError("could not bracket the eigenvalue from below")
    for _ in range(60):
        if _shoot(N, p, hi) < 0:
            break
        hi *= 2.0
    else:
        raise SearchError("could not bracket the eigenvalue from above")
    lam = brentq(lambda t: _shoot(N, p, t), lo, hi, rtol=max(tol, 4e-16))
    return float(lam)


def plap_eigenfunction(N: int, p: float, R: float = 1.0) -> transplant.RadialProfile:
    """First eigenfunction on the ball of radius R, normalized to 1 at the
    center; Phi_R(s) = Phi(s/R)."""
    if R <= 0:
        raise DomainError("R must be positive")
    lam = plap_first_eigenvalue(N, p)
    sol = _integrate(N, p, lam, dense=True)
    _, _, c = _series_start(N, p, lam)
    pp = p / (p - 1.0)
    r_end = sol.t[-1]

    def phi(r):
        r = np.asarray(r, dtype=float)
        out = np.empty_like(r)
        small = r < _DELTA
        out[small] = 1.0 - c * r[small] ** pp
        mid = (~small) & (r <= r_end)
        if mid.any():
            out[mid] = sol.sol(r[mid])[0]
        out[r > r_end] = 0.0
        return out

    def dphi(r):
        r = np.asarray(r, dtype=float)
        out = np.empty_like(r)
        small = r < _DELTA
        out[small] = -c * pp * r[small] ** (pp - 1.0)
        mid = (~small) & (r <= r_end)
        if mid.any():
            w = sol.sol(r[mid])[1]
            out[mid] = np.sign(w) * np.abs(w / r[mid] ** (N - 1)) ** (1.0 / (p - 1.0))
        out[r > r_end] = 0.0
        return out

    def values(s):
        s = np.asarray(s, dtype=float)
        out = phi(s / R)
        return out if out.ndim else float(out)

    def derivative(s):
        s = np.asarray(s, dtype=float)
        out = dphi(s / R) / R
        return out if out.ndim else float(out)

    return transplant.RadialProfile(values=values, derivative=derivative,
                                    domain="ball", dim=N, radius=R,
                                    label=f"plap_eigenfunction(N={N},p={p})")
