"""Extremal profiles of each inequality family, expressed as radial profiles
in the coordinate their inequality is stated in (Wulff-ball side for the interior
families, half-line side for the Poincare and Trudinger-Moser families)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .. import specfun, transplant
from ..errors import DomainError, InputError
from .constants import logsob_normalization
from .eigen import plap_eigenfunction

__all__ = ["ExtremalSpec", "extremal_profile", "moser_profile"]


@dataclass(frozen=True)
class ExtremalSpec:
    """Free parameters of one extremal family.

    sobolev: a, b > 0; gn/logsob: sigma > 0, C != 0; nash: lam > 0, C != 0;
    trace: eps > 0, C != 0; poincare: none.
    """

    family: str
    params: dict = field(default_factory=dict)

    def get(self, name, default=None):
        v = self.params.get(name, default)
        if v is None:
            raise InputError(f"{self.family} extremal needs parameter {name!r}")
        return float(v)


def _sobolev(m: transplant.TransplantMap, a: float, b: float) -> transplant.RadialProfile:
    if a <= 0 or b <= 0:
        raise DomainError("sobolev extremal needs a, b > 0")
    N, p = m.N, m.p
    pp = p / (p - 1.0)
    g = (N - p) / p

    def U(r):
        return (a + b * np.asarray(r, float) ** pp) ** (-g)

    def dU(r):
        r = np.asarray(r, float)
        return -g * b * pp * r ** (pp - 1.0) * (a + b * r ** pp) ** (-g - 1.0)

    prof = transplant.RadialProfile(values=U, derivative=dU, domain="halfline",
                                    dim=N, label=f"sobolev_extremal(a={a},b={b})")
    return transplant.transplant_profile(m, prof)


def _gn(m: transplant.TransplantMap, sigma: float, C: float, q: float) -> transplant.RadialProfile:
    if sigma <= 0 or C == 0:
        raise DomainError("gn extremal needs sigma > 0 and C != 0")
    e = 1.0 / (q - 1.0)

    def U(r):
        return C * (sigma * sigma + np.asarray(r, float) ** 2) ** (-e)

    def dU(r):
        r = np.asarray(r, float)
        return C * (-2.0 * e) * r * (sigma * sigma + r * r) ** (-e - 1.0)

    prof = transplant.RadialProfile(values=U, derivative=dU, domain="halfline",
                                    dim=m.N, label=f"gn_extremal(sigma={sigma})")
    return transplant.transplant_profile(m, prof)


def _nash(m: transplant.TransplantMap, lam: float, C: float) -> transplant.RadialProfile:
    if lam <= 0 or C == 0:
        raise DomainError("nash extremal needs lam > 0 and C != 0")
    N = m.N
    nu = (N - 2.0) / 2.0
    mu = specfun.bessel_first_zero(N / 2.0).value
    U1 = special.jv(nu, mu)  # value of rho^{-nu} J_nu(mu rho) at rho = 1
    psi0 = (mu / 2.0) ** nu / math.gamma(nu + 1.0) - U1  # limit at rho -> 0

    def psi(rho):
        rho = np.asarray(rho, float)
        inside = rho < 1.0
        out = np.zeros_like(rho)
        rr = np.clip(rho, 1e-9, None)
        vals = rr ** (-nu) * special.jv(nu, mu * rr) - U1
        vals = np.where(rho < 1e-9, psi0, vals)
        out[inside] = vals[inside]
        return out

    def dpsi(rho):
        # d/dx [x^{-nu} J_nu(x)] = -x^{-nu} J_{nu+1}(x)
        rho = np.asarray(rho, float)
        inside = rho < 1.0
        out = np.zeros_like(rho)
        rr = np.clip(rho, 1e-9, None)
        vals = -mu * rr ** (-nu) * special.jv(nu + 1.0, mu * rr)
        vals = np.where(rho < 1e-9, 0.0, vals)
        out[inside] = vals[inside]
        return out

    def U(r):
        out = C * psi(lam * np.asarray(r, float))
        return out if out.ndim else float(out)

    def dU(r):
        out = C * lam * dpsi(lam * np.asarray(r, float))
        return out if out.ndim else float(out)

    prof = transplant.RadialProfile(values=U, derivative=dU, domain="halfline",
                                    dim=N, support=1.0 / lam,
                                    label=f"nash_extremal(lam={lam})")
    return transplant.transplant_profile(m, prof)


def _logsob(m: transplant.TransplantMap, sigma: float, C: float | None) -> transplant.RadialProfile:
    if sigma <= 0:
        raise DomainError("logsob extremal needs sigma > 0")
    N, p = m.N, m.p
    pp = p / (p - 1.0)
    amp = logsob_normalization(N, p, sigma) if C is None else C

    def U(r):
        return amp * np.exp(-np.asarray(r, float) ** pp / sigma)

    def dU(r):
        r = np.asarray(r, float)
        return amp * (-pp * r ** (pp - 1.0) / sigma) * np.exp(-r ** pp / sigma)

    prof = transplant.RadialProfile(values=U, derivative=dU, domain="halfline",
                                    dim=N, label=f"logsob_extremal(sigma={sigma})")
    return transplant.transplant_profile(m, prof)


def _poincare(m: transplant.TransplantMap) -> transplant.RadialProfile:
    if m.kind != "exterior":
        raise InputError("poincare extremal lives on the exterior map")
    phi = plap_eigenfunction(m.N, m.p, m.R)
    return transplant.transplant_profile(m, phi)


def _trace(m: transplant.TransplantMap, eps: float, C: float) -> transplant.TraceProfile:
    if eps <= 0 or C == 0:
        raise DomainError("trace extremal needs eps > 0 and C != 0")
    N, p = m.N, m.p
    g = (N - p) / (2.0 * (p - 1.0))
    amp = C * eps ** (2.0 * g / p)

    def r_of_s(s):
        # map_forward rounds to exactly R (or 0) at extreme arguments; nudge
        # back inside the open interval before inverting
        s = np.clip(np.asarray(s, float), 1e-300, m.R * (1.0 - 1e-16))
        return np.asarray(transplant.map_inverse(m, s), float)

    def D(r, t):
        return (eps + t) ** 2 + np.asarray(r, float) ** 2

    def V(s, t):
        with np.errstate(over="ignore"):
            return amp * D(r_of_s(s), t) ** (-g)

    def Vs(s, t):
        r = r_of_s(s)
        drds = 1.0 / np.asarray(transplant.map_jacobian(m, r), float)
        with np.errstate(over="ignore"):
            return amp * (-2.0 * g) * r * drds * D(r, t) ** (-g - 1.0)

    def Vt(s, t):
        r = r_of_s(s)
        with np.errstate(over="ignore"):
            return amp * (-2.0 * g) * (eps + t) * D(r, t) ** (-g - 1.0)

    return transplant.TraceProfile(values=V, d_radial=Vs, d_t=Vt,
                                   domain="ball", dim=N, radius=m.R,
                                   label=f"trace_extremal(eps={eps})")


def extremal_profile(family: str, espec: ExtremalSpec, m: transplant.TransplantMap):
    """The family's extremal as a profile in its native coordinate."""
    if espec.family != family:
        raise InputError(f"extremal spec family {espec.family!r} != {family!r}")
    if family == "sobolev":
        return _sobolev(m, espec.get("a"), espec.get("b"))
    if family == "gn":
        return _gn(m, espec.get("sigma"), espec.get("C", 1.0), espec.get("q"))
    if family == "nash":
        return _nash(m, espec.get("lam"), espec.get("C", 1.0))
    if family == "logsob":
        C = espec.params.get("C")
        return _logsob(m, espec.get("sigma"), None if C is None else float(C))
    if family == "poincare":
        return _poincare(m)
    if family == "trace":
        return _trace(m, espec.get("eps"), espec.get("C", 1.0))
    raise InputError(f"no extremal profile implemented for family {family!r}")


def moser_profile(m: transplant.TransplantMap, k: int) -> transplant.RadialProfile:
    """Truncated-logarithm profile with exactly the admissible gradient budget.

    The half-line profile equals sqrt(log tau / (2 pi)) inside
    r <= (log tau)^{-1/(N-2)} and r^{2-N}/sqrt(2 pi log tau) outside, with
    tau = 2^k.  Its disk counterpart under the planar map has unit Dirichlet
    energy, so the transplanted gradient energy meets the budget exactly.
    """
    if m.kind != "planar":
        raise InputError("moser profiles live on the planar map")
    if k < 1:
        raise DomainError("k must be a positive integer")
    N = m.N
    ltau = k * math.log(2.0)
    c = 1.0 / math.sqrt(2.0 * math.pi * ltau)
    r_c = ltau ** (-1.0 / (N - 2.0))

    def U(r):
        r = np.asarray(r, float)
        with np.errstate(over="ignore"):
            out = np.where(r <= r_c, ltau * c, c * r ** (2.0 - N))
        return out if out.ndim else float(out)

    def dU(r):
        r = np.asarray(r, float)
        with np.errstate(over="ignore"):
            out = np.where(r <= r_c, 0.0, c * (2.0 - N) * r ** (1.0 - N))
        return out if out.ndim else float(out)

    return transplant.RadialProfile(values=U, derivative=dU, domain="halfline",
                                    dim=N, kinks=(r_c,),
                                    label=f"moser_profile(k={k})")
