"""Coordinate changes between radially symmetric and Finsler-symmetric
functions, their Jacobians and induced weights, and two-sided verification of
the induced integral identities.

Four map kinds share one record:

  interior  r in (0, inf) -> s in (0, R), ball side is Finsler
  exterior  same algebra; the half-line side carries the Finsler gauge and the
            induced weight lives on (0, inf)
  trace     same algebra one dimension down (transplant dimension N - 1)
  planar    s = R exp(-r^{2-N}), pairing R^N with a 2-disk (p fixed at 2)

Note: the boundary-degenerate trace weight A_R below uses the exponent
2(N-2)/(N-1-p).  This is the exponent forced by the Jacobian computation and
is the one under which the trace energy identity and the trace inequality's
equality case verify numerically; see the derivation of ds/dr.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from . import norms, quadrature, specfun
from .errors import DomainError, InputError
from .report import VerificationReport

__all__ = [
    "TransplantMap",
    "RadialProfile",
    "TraceProfile",
    "WEIGHT_KINDS",
    "map_forward",
    "map_inverse",
    "map_jacobian",
    "weight_at",
    "transplant_profile",
    "equivalence_check",
    "map_from_dict",
    "map_to_dict",
]

WEIGHT_KINDS = ("interior_weight", "exterior_weight", "trace_A_R", "planar_W")

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class TransplantMap:
    kind: str   # interior | exterior | trace | planar
    N: int
    p: float
    R: float

    def __post_init__(self):
        if self.R <= 0:
            raise InputError("map radius R must be positive")
        if self.kind in ("interior", "exterior"):
            if not (1.0 < self.p < self.N):
                raise InputError(f"{self.kind} map needs 1 < p < N, got p={self.p}, N={self.N}")
        elif self.kind == "trace":
            if self.N < 3 or not (1.0 < self.p < self.N - 1):
                raise InputError(f"trace map needs N >= 3 and 1 < p < N-1, got p={self.p}, N={self.N}")
        elif self.kind == "planar":
            if self.N < 3:
                raise InputError("planar map needs N >= 3")
            if self.p != 2:
                raise InputError("planar map has p fixed at 2")
        else:
            raise InputError(f"unknown map kind {self.kind!r}")

    @property
    def trans_dim(self) -> int:
        """Dimension whose exponents drive the r <-> s algebra."""
        return self.N - 1 if self.kind == "trace" else self.N

    @property
    def exponent(self) -> float:
        """(p - M)/(p - 1) with M the transplant dimension (negative)."""
        M = self.trans_dim
        return (self.p - M) / (self.p - 1.0)


def _pos(x, name):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError(f"{name} must be positive")
    return x


def map_forward(m: TransplantMap, r):
    """s(r): (0, inf) -> (0, R)."""
    r = _pos(r, "r")
    if m.kind == "planar":
        s = m.R * np.exp(-r ** (2.0 - m.N))
    else:
        a = m.exponent
        # log form of (r^a + R^a)^{1/a}: r^a overflows at tiny r (a < 0)
        s = np.exp(np.logaddexp(a * np.log(r), a * math.log(m.R)) / a)
    return s if s.ndim else float(s)


def map_inverse(m: TransplantMap, s):
    """r(s): (0, R) -> (0, inf)."""
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0) or np.any(s >= m.R):
        raise DomainError(f"s must lie in (0, {m.R})")
    if m.kind == "planar":
        r = np.log(m.R / s) ** (-1.0 / (m.N - 2.0))
    else:
        a = m.exponent
        # log form of (s^a - R^a)^{1/a}; expm1 keeps 1 - (s/R)^{-a} alive
        # when s is within an ulp of R
        r = np.exp((a * np.log(s)
                    + np.log(-np.expm1(a * (math.log(m.R) - np.log(s))))) / a)
    return r if r.ndim else float(r)


def map_jacobian(m: TransplantMap, r):
    """ds/dr at r > 0 (closed form, positive everywhere)."""
    r = _pos(r, "r")
    s = np.asarray(map_forward(m, r))
    if m.kind == "planar":
        # log form: r spans many decades under the tanh-sinh node clustering
        j = (m.N - 2.0) * np.exp(np.log(s) - (m.N - 1.0) * np.log(r))
    else:
        M, p = m.trans_dim, m.p
        j = np.exp(((M - 1.0) / (p - 1.0)) * (np.log(s) - np.log(r)))
    return j if j.ndim else float(j)


def weight_at(m: TransplantMap, kind: str, point, spec: Optional[norms.NormSpec] = None):
    """Induced weight of the map at a radial coordinate.

    interior_weight and trace_A_R take s in (0, R); exterior_weight and
    planar_W take r > 0.  planar_W needs the norm (for kappa_N); euclidean is
    assumed when spec is omitted.
    """
    if kind not in WEIGHT_KINDS:
        raise InputError(f"unknown weight kind {kind!r}")
    x = np.asarray(point, dtype=float)
    M, p, R = m.trans_dim, m.p, m.R
    if kind == "interior_weight":
        if m.kind not in ("interior", "exterior"):
            raise InputError("interior_weight belongs to interior/exterior maps")
        if np.any(x <= 0) or np.any(x >= R):
            raise DomainError(f"s must lie in (0, {R})")
        # exp/expm1 form: the weight spans many decades as s -> R and the
        # plain power (s/R)^theta rounds to 1 within an ulp of the boundary
        expo = p * (M - 1.0) / (M - p)
        theta = (M - p) / (p - 1.0)
        out = np.exp(-expo * np.log(-np.expm1(theta * np.log(x / R))))
    elif kind == "exterior_weight":
        if m.kind != "exterior":
            raise InputError("exterior_weight belongs to the exterior map")
        x = _pos(x, "r")
        expo = p * (M - 1.0) / (M - p)
        out = (1.0 + (x / R) ** ((M - p) / (p - 1.0))) ** (-expo)
    elif kind == "trace_A_R":
        if m.kind != "trace":
            raise InputError("trace_A_R belongs to the trace map")
        if np.any(x <= 0) or np.any(x >= R):
            raise DomainError(f"s must lie in (0, {R})")
        expo = 2.0 * (M - 1.0) / (M - p)
        theta = (M - p) / (p - 1.0)
        out = np.exp(expo * np.log(-np.expm1(theta * np.log(x / R))))
    else:  # planar_W
        if m.kind != "planar":
            raise InputError("planar_W belongs to the planar map")
        x = _pos(x, "r")
        N = m.N
        if spec is None:
            spec = norms.NormSpec.euclidean(N)
        kappa, _ = norms.wulff_measure(spec)
        pref = 2.0 * math.pi * (N - 2.0) / (N * kappa)
        # log form: the two factors overflow/underflow separately at tiny r
        with np.errstate(over="ignore"):
            out = pref * R * R * np.exp(-2.0 * (N - 1.0) * np.log(x)
                                        - 2.0 * np.exp((2.0 - N) * np.log(x)))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class RadialProfile:
    """A one-dimensional profile U(r) (half-line) or V(s) (ball of radius R).

    ``support`` optionally marks a cutoff beyond which the profile vanishes
    identically (e.g. compactly supported extremals); integrators use it to
    truncate their domain.
    """

    values: Callable
    domain: str                      # "ball" | "halfline"
    dim: int
    radius: Optional[float] = None   # ball radius R
    derivative: Optional[Callable] = None
    support: Optional[float] = None
    kinks: tuple = ()                # interior points where smoothness fails
    label: str = ""

    def __post_init__(self):
        if self.domain not in ("ball", "halfline"):
            raise InputError(f"unknown profile domain {self.domain!r}")
        if self.domain == "ball" and (self.radius is None or self.radius <= 0):
            raise InputError("ball profiles need a positive radius")

    def __call__(self, x):
        return self.values(x)

    def d(self, x):
        """Derivative, central finite differences when no closed form given."""
        if self.derivative is not None:
            return self.derivative(x)
        x = np.asarray(x, dtype=float)
        h = _EPS ** (1.0 / 3.0) * np.maximum(np.abs(x), 1e-2)
        if self.domain == "ball":
            h = np.minimum(h, 0.45 * (self.radius - x))
        h = np.minimum(h, 0.45 * np.abs(x))
        out = (self.values(x + h) - self.values(x - h)) / (2.0 * h)
        return out if out.ndim else float(out)

    @property
    def upper(self) -> float:
        """Upper end of the integration domain (support-aware)."""
        hi = math.inf if self.domain == "halfline" else self.radius
        if self.support is not None:
            hi = min(hi, self.support)
        return hi


@dataclass(frozen=True)
class TraceProfile:
    """A two-variable profile V(s, t) or U(r, t); t ranges over (0, inf)."""

    values: Callable                 # (s_or_r, t) -> value
    d_radial: Callable
    d_t: Callable
    domain: str                      # "ball" | "halfline" (first coordinate)
    dim: int                         # ambient dimension N
    radius: Optional[float] = None
    label: str = ""


def transplant_profile(m: TransplantMap, profile: RadialProfile) -> RadialProfile:
    """Express a profile in the other coordinate of the map (lazy composition)."""
    if profile.domain == "halfline":
        def values(s):
            return profile.values(map_inverse(m, s))

        def derivative(s):
            r = map_inverse(m, s)
            return profile.d(r) / map_jacobian(m, r)

        support = None
        if profile.support is not None and math.isfinite(profile.support):
            support = map_forward(m, profile.support)
        kinks = tuple(map_forward(m, k) for k in profile.kinks)
        return RadialProfile(values=values, derivative=derivative, domain="ball",
                             dim=profile.dim, radius=m.R, support=support,
                             kinks=kinks, label=profile.label)
    if profile.radius != m.R:
        raise InputError(f"profile radius {profile.radius} does not match map R={m.R}")

    def values(r):
        return profile.values(map_forward(m, r))

    def derivative(r):
        return profile.d(map_forward(m, r)) * map_jacobian(m, r)

    support = None
    if profile.support is not None and profile.support < m.R:
        support = map_inverse(m, profile.support)
    kinks = tuple(map_inverse(m, k) for k in profile.kinks if 0.0 < k < m.R)
    return RadialProfile(values=values, derivative=derivative, domain="halfline",
                         dim=profile.dim, support=support, kinks=kinks,
                         label=profile.label)


def _both_sides(m: TransplantMap, profile: RadialProfile):
    """Canonical (U on half-line, V on ball) pair for a map."""
    if isinstance(profile, TraceProfile):
        raise InputError("radial profile expected")
    if profile.domain == "halfline":
        return profile, transplant_profile(m, profile)
    return transplant_profile(m, profile), profile


def _halfline_or_cut(f, hi, tol):
    if math.isinf(hi):
        return quadrature.integrate_halfline(f, tol)
    return quadrature.integrate_finite(f, 0.0, hi, tol)


def _integrate_side(f, hi, kinks, tol, lo=0.0):
    """Piecewise integration of f on (lo, hi), split at interior kinks."""
    cuts = sorted(k for k in kinks if lo < k < hi)
    value = err = 0.0
    evals = 0
    converged = True
    for edge in cuts + [hi]:
        if math.isfinite(edge):
            res = quadrature.integrate_singular(f, lo, edge, tol)
        elif lo > 0.0:
            res = quadrature.integrate_halfline(lambda u: f(lo + u), tol)
        else:
            res = quadrature.integrate_halfline(f, tol)
        value += res.value
        err += res.error_estimate
        evals += res.evaluations
        converged = converged and res.converged
        lo = edge
    return quadrature.QuadResult(value, err, evals, converged)


def equivalence_check(m: TransplantMap, spec: norms.NormSpec, profile,
                      F: Optional[Callable] = None,
                      tol: float = 1e-7) -> VerificationReport:
    """Verify the map's integral identity by independent quadrature of both
    sides, each in its native coordinate.

    F is the observable (continuous function of the profile value); F=None
    checks the p-gradient-energy identity instead.  For trace maps, a
    TraceProfile is required and the two-dimensional energy identity is
    checked.
    """
    if m.kind == "trace":
        return _equivalence_trace(m, spec, profile, tol)

    N, p = m.N, m.p
    if spec.dim != N:
        raise InputError(f"norm dimension {spec.dim} != map dimension {N}")
    omega = specfun.sphere_area(N)
    kappa, _ = norms.wulff_measure(spec)
    pref = omega / (N * kappa)
    U, V = _both_sides(m, profile)
    hi_u, hi_v = U.upper, V.upper

    if m.kind in ("interior", "exterior"):
        if F is not None:
            fu = lambda r: F(U(r)) * r ** (N - 1)
            wk = "interior_weight" if m.kind == "interior" else "exterior_weight"
            if m.kind == "interior":
                fv = lambda s: F(V(s)) * weight_at(m, wk, s) * s ** (N - 1)
            else:
                fv = lambda s: F(V(s)) * s ** (N - 1)
                fu = lambda r: F(U(r)) * weight_at(m, wk, r) * r ** (N - 1)
        else:
            fu = lambda r: np.abs(U.d(r)) ** p * r ** (N - 1)
            fv = lambda s: np.abs(V.d(s)) ** p * s ** (N - 1)
        ru = _integrate_side(fu, hi_u, U.kinks, tol)
        rv = _integrate_side(fv, min(hi_v, m.R), V.kinks, tol)
        if m.kind == "interior":
            # R^N integral on the left, weighted Wulff-ball integral right
            lhs = omega * ru.value
            rhs = pref * (N * kappa * rv.value)
            budget = omega * ru.error_estimate + pref * N * kappa * rv.error_estimate
        else:
            # ball B_R on the left, weighted R^N integral on the right
            lhs = omega * rv.value
            rhs = pref * (N * kappa * ru.value)
            budget = omega * rv.error_estimate + pref * N * kappa * ru.error_estimate
        evals = ru.evaluations + rv.evaluations
        converged = ru.converged and rv.converged
    else:  # planar
        if F is not None:
            fv = lambda s: F(V(s)) * s
            fu = lambda r: F(U(r)) * weight_at(m, "planar_W", r, spec) * r ** (N - 1)
            scale_u = N * kappa
        else:
            fv = lambda s: np.abs(V.d(s)) ** 2 * s
            fu = lambda r: np.abs(U.d(r)) ** 2 * r ** (N - 1)
            scale_u = (2.0 * math.pi / ((N - 2.0) * N * kappa)) * N * kappa
        if F is not None:
            rv = _integrate_side(fv, min(hi_v, m.R), V.kinks, tol)
            ru = _integrate_side(fu, hi_u, U.kinks, tol)
        else:
            # the energy identity is checked on an annulus: near the disk
            # center the s-side integrand spans hundreds of decades (the map
            # compresses r -> 0 double-exponentially), so both sides are
            # restricted to the exact image/preimage of s > R e^{-60}
            s_lo = m.R * math.exp(-60.0)
            r_lo = map_inverse(m, s_lo)
            rv = _integrate_side(fv, min(hi_v, m.R), V.kinks, tol, lo=s_lo)
            if math.isinf(hi_u):
                ru = _integrate_side(lambda u: fu(r_lo + u), math.inf,
                                     tuple(k - r_lo for k in U.kinks), tol)
            else:
                ru = _integrate_side(fu, hi_u, U.kinks, tol, lo=r_lo)
        lhs = 2.0 * math.pi * rv.value
        rhs = scale_u * ru.value
        budget = 2.0 * math.pi * rv.error_estimate + scale_u * ru.error_estimate
        evals = ru.evaluations + rv.evaluations
        converged = ru.converged and rv.converged

    mismatch = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    passed = converged and mismatch <= max(tol * 10 * scale, 10 * budget)
    return VerificationReport(
        family="transplant",
        label=f"{m.kind}_{'observable' if F is not None else 'gradient'}_identity",
        params={"N": N, "p": p, "R": m.R, "norm": spec.kind},
        lhs=float(lhs), rhs=float(rhs),
        ratio=float(rhs / lhs) if lhs else math.inf,
        deficit=float(rhs - lhs),
        error_budget=float(budget + tol * scale),
        passed=bool(passed),
        notes=f"evaluations={evals}",
    )


def _equivalence_trace(m: TransplantMap, spec: norms.NormSpec,
                       profile: TraceProfile, tol: float) -> VerificationReport:
    if not isinstance(profile, TraceProfile):
        raise InputError("trace equivalence needs a TraceProfile")
    N, p, R = m.N, m.p, m.R
    M = m.trans_dim
    if spec.dim != M:
        raise InputError(f"trace norm must live in dimension N-1={M}, got {spec.dim}")
    omega = specfun.sphere_area(M)       # omega_{N-2}
    kappa, _ = norms.wulff_measure(spec)  # kappa_{N-1}
    pref = omega / (M * kappa)

    if profile.domain == "ball":
        V, Vs, Vt = profile.values, profile.d_radial, profile.d_t

        def U(r, t):
            return V(map_forward(m, r), t)

        def Ur(r, t):
            return Vs(map_forward(m, r), t) * map_jacobian(m, r)

        Ut = lambda r, t: Vt(map_forward(m, r), t)
    else:
        U, Ur, Ut = profile.values, profile.d_radial, profile.d_t

        def V(s, t):
            return U(map_inverse(m, s), t)

        def Vs(s, t):
            r = map_inverse(m, s)
            return Ur(r, t) / map_jacobian(m, r)

        Vt = lambda s, t: Ut(map_inverse(m, s), t)

    def f_lhs(r, t):
        return (Ur(r, t) ** 2 + Ut(r, t) ** 2) ** (p / 2.0) * r ** (M - 1)

    def f_rhs(s, t):
        A = weight_at(m, "trace_A_R", s)
        return (Vs(s, t) ** 2 * A + Vt(s, t) ** 2) ** (p / 2.0) * A ** (-p / 2.0) * s ** (M - 1)

    # the identity is checked on the exact image/preimage pair of radial
    # ranges: beyond s = R(1 - 1e-12) the ball coordinate cannot resolve the
    # map faithfully in double precision
    s_hi = R * (1.0 - 1e-12)
    r_hi = map_inverse(m, s_hi)
    rl = quadrature.integrate_2d(lambda r, t: f_lhs(r, t), r_hi, tol)
    rr = quadrature.integrate_2d(f_rhs, s_hi, tol)
    lhs = omega * rl.value
    rhs = pref * (M * kappa * rr.value)
    budget = omega * rl.error_estimate + pref * M * kappa * rr.error_estimate
    mismatch = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    passed = rl.converged and rr.converged and mismatch <= max(tol * 10 * scale, 10 * budget)
    return VerificationReport(
        family="transplant",
        label="trace_energy_identity",
        params={"N": N, "p": p, "R": R, "norm": spec.kind},
        lhs=float(lhs), rhs=float(rhs),
        ratio=float(rhs / lhs) if lhs else math.inf,
        deficit=float(rhs - lhs),
        error_budget=float(budget + tol * scale),
        passed=bool(passed),
        notes=f"evaluations={rl.evaluations + rr.evaluations}",
    )


def map_to_dict(m: TransplantMap) -> dict:
    return {"kind": m.kind, "N": m.N, "p": m.p, "R": m.R}


def map_from_dict(d: dict) -> TransplantMap:
    extra = set(d) - {"kind", "N", "p", "R"}
    if extra:
        raise InputError(f"unknown keys in map spec: {sorted(extra)}")
    try:
        return TransplantMap(kind=d["kind"], N=int(d["N"]),
                             p=float(d.get("p", 2.0)), R=float(d.get("R", 1.0)))
    except KeyError as exc:
        raise InputError(f"map spec missing field {exc}") from exc
