"""Two-sided numerical verification of the inequality families.

Each family is reduced to one-dimensional (or, for the trace family,
two-dimensional) integrals of a radial profile.  Profiles given on the Wulff
ball carry the transplant weight; profiles given on the half line are
integrated in their classical unweighted form.  The two routes agree exactly
through the change of variables, so either coordinate may be supplied.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .. import norms, quadrature, transplant
from ..errors import AdmissibilityError, InputError, PrecisionError
from ..report import VerificationReport
from .constants import SharpConstants

__all__ = ["evaluate_case", "perturbation_check", "TM_BOUND_FACTOR"]

# Witness bound for the exponential functional: functional <= factor * R^2
# for every admissible profile checked here (boundedness witness only, not a
# supremum).  The truncated-logarithm family peaks near 3.57 * pi * R^2.
TM_BOUND_FACTOR = 4.0 * math.pi

_TINY = 1e-300


def _q(res: quadrature.QuadResult, what: str) -> quadrature.QuadResult:
    if not res.converged:
        raise PrecisionError(f"quadrature did not converge for {what}",
                             estimate=res.value)
    return res


def _entropy(t):
    t = np.asarray(t, dtype=float)
    out = np.where(t > 0.0, t * np.log(np.clip(t, _TINY, None)), 0.0)
    return out if out.ndim else float(out)


class _Reduced:
    """Reduced radial integrals of one profile in its native coordinate.

    potential(F) is int F(v) w dmu and energy(p) is int |v'|^p dmu, both over
    the profile's coordinate with the N-dimensional radial measure, scaled by
    N kappa so they equal the ambient Finsler-symmetric integrals.
    """

    def __init__(self, m: transplant.TransplantMap, spec: norms.NormSpec,
                 profile: transplant.RadialProfile, tol: float):
        if spec.dim != m.trans_dim:
            raise InputError(
                f"norm dimension {spec.dim} does not match map dimension {m.trans_dim}")
        self.m = m
        self.spec = spec
        self.profile = profile
        self.tol = tol
        kappa, _ = norms.wulff_measure(spec)
        self.evaluations = 0
        if profile.domain == "ball" and profile.radius != m.R:
            raise InputError(
                f"profile radius {profile.radius} does not match map R={m.R}")
        # which coordinate carries the weight: the Finsler side of the map
        self.weighted_side = "ball" if m.kind == "interior" else "halfline"
        self.weight_kind = {"interior": "interior_weight",
                            "exterior": "exterior_weight",
                            "planar": "planar_W"}.get(m.kind)
        # measure of the profile's coordinate: the disk side of the planar
        # pairing is two-dimensional, every other side is N-dimensional
        if m.kind == "planar" and profile.domain == "ball":
            self.dim = 2
            self.scale = 2.0 * math.pi
            # disk gradient energy -> ambient Finsler energy
            self.energy_factor = (m.N - 2.0) * m.N * kappa / (2.0 * math.pi)
        else:
            self.dim = m.trans_dim
            self.scale = self.dim * kappa
            self.energy_factor = 1.0

    def _weight(self, x):
        if self.profile.domain != self.weighted_side or self.weight_kind is None:
            return 1.0
        if self.weight_kind == "planar_W":
            return transplant.weight_at(self.m, "planar_W", x, self.spec)
        return transplant.weight_at(self.m, self.weight_kind, x)

    def _integrate(self, f) -> float:
        d = self.dim
        g = lambda x: f(x) * x ** (d - 1)
        hi = self.profile.upper
        cuts = sorted(k for k in self.profile.kinks if 0.0 < k < hi)
        total = 0.0
        lo = 0.0
        for edge in cuts + [hi]:
            if math.isfinite(edge):
                res = quadrature.integrate_singular(g, lo, edge, self.tol)
            elif lo > 0.0:
                res = quadrature.integrate_halfline(lambda u: g(lo + u), self.tol)
            else:
                res = quadrature.integrate_halfline(g, self.tol)
            _q(res, self.profile.label or "reduced integral")
            self.evaluations += res.evaluations
            self.budget = getattr(self, "budget", 0.0) + self.scale * res.error_estimate
            total += res.value
            lo = edge
        return self.scale * total

    def potential(self, F) -> float:
        v = self.profile
        return self._integrate(lambda x: F(v(x)) * self._weight(x))

    def energy(self, p: float) -> float:
        v = self.profile
        return self.energy_factor * self._integrate(lambda x: np.abs(v.d(x)) ** p)


def _report(family, m, spec, constants, lhs, rhs, budget, notes="",
            extremal=False, label="") -> VerificationReport:
    deficit = rhs - lhs
    passed = deficit >= -budget
    if extremal:
        passed = passed and abs(deficit) <= budget
    return VerificationReport(
        family=family,
        label=label or family,
        params={"N": m.N, "p": m.p, "R": m.R, "norm": spec.kind,
                "constants": dict(constants.tilde)},
        lhs=float(lhs), rhs=float(rhs),
        ratio=float(rhs / lhs) if lhs else math.inf,
        deficit=float(deficit),
        error_budget=float(budget),
        passed=bool(passed),
        notes=notes,
    )


def evaluate_case(family: str, spec: norms.NormSpec, m: transplant.TransplantMap,
                  profile, constants: SharpConstants, tol: float = 1e-8,
                  extremal: bool = False) -> VerificationReport:
    """Evaluate one inequality on one profile and report both sides.

    The deficit is rhs - lhs in the orientation 'lhs <= rhs'; it is expected
    nonnegative for every admissible profile and zero (within the error
    budget) at an extremal.  Pass ``extremal=True`` to also require the
    near-equality in the pass flag.
    """
    if constants.family != family:
        raise InputError(f"constants are for family {constants.family!r}")
    if family == "trace":
        return _evaluate_trace(spec, m, profile, constants, tol, extremal)
    if family == "trudinger_moser":
        return _evaluate_tm(spec, m, profile, constants, tol, extremal)

    if family in ("sobolev", "gn", "nash", "logsob"):
        if m.kind != "interior":
            raise InputError(f"{family} verification runs on the interior map")
    elif family == "poincare":
        if m.kind != "exterior":
            raise InputError("poincare verification runs on the exterior map")
    else:
        raise InputError(f"unknown family {family!r}")

    red = _Reduced(m, spec, profile, tol)
    N, p = m.N, m.p

    if family == "sobolev":
        ps = constants.values["p_star"]
        S = constants.tilde["S"]
        I_L = red.potential(lambda v: np.abs(v) ** ps)
        E = red.energy(p)
        lhs = S * I_L ** (p / ps)
        rhs = E
        rel = (p / ps) * _relerr_of(red, I_L) + _relerr_of(red, E)
    elif family == "gn":
        q = float(constants.param)
        theta = constants.values["theta"]
        A = constants.tilde["A"]
        I_2q = red.potential(lambda v: np.abs(v) ** (2.0 * q))
        I_m = red.potential(lambda v: np.abs(v) ** (q + 1.0))
        E = red.energy(2.0)
        lhs = I_2q ** (1.0 / (2.0 * q))
        rhs = A * E ** (theta / 2.0) * I_m ** ((1.0 - theta) / (q + 1.0))
        rel = (_relerr_of(red, I_2q) / (2.0 * q)
               + (theta / 2.0) * _relerr_of(red, E)
               + ((1.0 - theta) / (q + 1.0)) * _relerr_of(red, I_m))
    elif family == "nash":
        B = constants.tilde["B"]
        I_2 = red.potential(lambda v: v * v)
        I_1 = red.potential(np.abs)
        E = red.energy(2.0)
        lhs = I_2 ** (1.0 + 2.0 / N)
        rhs = B * E * I_1 ** (4.0 / N)
        rel = ((1.0 + 2.0 / N) * _relerr_of(red, I_2)
               + _relerr_of(red, E) + (4.0 / N) * _relerr_of(red, I_1))
    elif family == "logsob":
        L = constants.tilde["L"]
        mass = red.potential(lambda v: np.abs(v) ** p)
        ent_raw = red.potential(lambda v: _entropy(np.abs(v) ** p))
        E_raw = red.energy(p)
        # renormalize |v|^p to unit mass; the scaling is recorded in notes
        lhs = (ent_raw - mass * math.log(mass)) / mass
        rhs = (N / p) * math.log(L * E_raw / mass)
        rel = (_relerr_of(red, mass) * (2.0 + N / p)
               + _relerr_of(red, ent_raw) + (N / p) * _relerr_of(red, E_raw))
        scale = max(abs(lhs), abs(rhs), 1.0)
        budget = scale * (rel + 10.0 * tol)
        return _report(family, m, spec, constants, lhs, rhs, budget,
                       notes=f"mass_before_renormalization={mass:.15g}",
                       extremal=extremal, label=profile.label)
    else:  # poincare
        lam = constants.values["lambda1"]
        I_p = red.potential(lambda v: np.abs(v) ** p)
        E = red.energy(p)
        lhs = lam * I_p
        rhs = m.R ** p * E
        rel = _relerr_of(red, I_p) + _relerr_of(red, E)

    scale = max(abs(lhs), abs(rhs), _TINY)
    budget = scale * (rel + 10.0 * tol)
    return _report(family, m, spec, constants, lhs, rhs, budget,
                   extremal=extremal, label=profile.label)


def _relerr_of(red: _Reduced, value: float) -> float:
    # budget accumulates across calls; the per-term split is not tracked, so
    # charge the whole running budget to each term (conservative)
    return getattr(red, "budget", 0.0) / max(abs(value), _TINY)


def _evaluate_trace(spec, m, profile, constants, tol, extremal):
    if m.kind != "trace":
        raise InputError("trace verification runs on the trace map")
    if not isinstance(profile, transplant.TraceProfile):
        raise InputError("trace verification needs a TraceProfile")
    M = m.trans_dim
    if spec.dim != M:
        raise InputError(f"trace norm must live in dimension {M}, got {spec.dim}")
    kappa, _ = norms.wulff_measure(spec)
    scale_k = M * kappa
    p = m.p
    ps = constants.values["p_star_trace"]
    ST = constants.tilde["S_T"]
    tol2 = max(tol, 1e-7)

    if profile.domain == "ball":
        V, Vs, Vt = profile.values, profile.d_radial, profile.d_t

        def f_trace(s):
            A = transplant.weight_at(m, "trace_A_R", s)
            return np.abs(V(s, 0.0)) ** ps * A ** (-p / 2.0) * s ** (M - 1)

        def f_energy(s, t):
            A = transplant.weight_at(m, "trace_A_R", s)
            return ((Vs(s, t) ** 2 * A + Vt(s, t) ** 2) ** (p / 2.0)
                    * A ** (-p / 2.0) * s ** (M - 1))

        rt = _q(quadrature.integrate_singular(f_trace, 0.0, m.R, tol),
                "trace boundary integral")
        re = _q(quadrature.integrate_2d(f_energy, m.R, tol2), "trace energy")
    else:
        U, Ur, Ut = profile.values, profile.d_radial, profile.d_t
        f_trace = lambda r: np.abs(U(r, 0.0)) ** ps * r ** (M - 1)
        f_energy = lambda r, t: (Ur(r, t) ** 2 + Ut(r, t) ** 2) ** (p / 2.0) * r ** (M - 1)
        rt = _q(quadrature.integrate_halfline(f_trace, tol), "trace boundary integral")
        re = _q(quadrature.integrate_2d_halfline(f_energy, tol2), "trace energy")

    T = scale_k * rt.value
    E = scale_k * re.value
    lhs = ST * T ** (p / ps)
    rhs = E
    rel = ((p / ps) * rt.error_estimate / max(abs(rt.value), _TINY)
           + re.error_estimate / max(abs(re.value), _TINY))
    scale = max(abs(lhs), abs(rhs), _TINY)
    budget = scale * (rel + 10.0 * tol2)
    return _report("trace", m, spec, constants, lhs, rhs, budget,
                   notes=f"evaluations={rt.evaluations + re.evaluations}",
                   extremal=extremal, label=profile.label)


def _evaluate_tm(spec, m, profile, constants, tol, extremal):
    if m.kind != "planar":
        raise InputError("trudinger_moser verification runs on the planar map")
    if extremal:
        raise InputError("the exponential functional has no extremal equality check")
    red = _Reduced(m, spec, profile, tol)
    budget_c = constants.values["energy_budget"]
    energy = red.energy(2.0)
    e_err = getattr(red, "budget", 0.0)
    if energy > budget_c * (1.0 + 1e-8) + e_err:
        raise AdmissibilityError(
            f"gradient energy {energy:.15g} exceeds the admissible budget "
            f"{budget_c:.15g}")
    red2 = _Reduced(m, spec, profile, tol)
    func = red2.potential(lambda v: np.exp(4.0 * math.pi * v * v))
    bound = TM_BOUND_FACTOR * m.R * m.R
    rel = _relerr_of(red2, func)
    budget = max(abs(func), abs(bound)) * (rel + 10.0 * tol)
    return _report("trudinger_moser", m, spec, constants, func, bound, budget,
                   notes=(f"energy={energy:.15g} "
                          f"energy_budget={budget_c:.15g}"),
                   extremal=False, label=profile.label)


_BUMPS = 8


def perturbation_check(family: str, spec: norms.NormSpec,
                       m: transplant.TransplantMap, base_profile,
                       delta: float, n: int = 4,
                       constants: Optional[SharpConstants] = None,
                       tol: float = 1e-8) -> float:
    """Minimum deficit of evaluate_case over n perturbed copies of a profile.

    Perturbations are v + delta*amp*eta_j with polynomial bumps
    eta_j(s) = (s/R)^j (1 - s/R) on the ball (vanishing at the boundary) or
    eta_j(r) = r^j exp(-(1+j) r) on the half line, and amp the profile's peak
    magnitude on a sample grid.  A strictly positive return (well beyond the
    error budget) witnesses strict inequality away from the profile.
    """
    if constants is None:
        raise InputError("perturbation_check needs the family's SharpConstants")
    if n < 1:
        raise InputError("need at least one perturbation direction")
    if not isinstance(base_profile, transplant.RadialProfile):
        raise InputError("perturbation_check supports radial profiles only")

    prof = base_profile
    if prof.domain == "ball":
        grid = np.linspace(prof.radius * 1e-4, prof.radius * (1 - 1e-4), 257)
        R = prof.radius

        def bump(j):
            eta = lambda s: (np.asarray(s) / R) ** j * (1.0 - np.asarray(s) / R)
            deta = lambda s: (j * (np.asarray(s) / R) ** (j - 1)
                              * (1.0 - np.asarray(s) / R)
                              - (np.asarray(s) / R) ** j) / R
            return eta, deta
    else:
        hi = prof.upper if math.isfinite(prof.upper) else 20.0
        grid = np.linspace(hi * 1e-4, hi, 257)

        def bump(j):
            eta = lambda r: np.asarray(r) ** j * np.exp(-(1.0 + j) * np.asarray(r))
            deta = lambda r: (j * np.asarray(r) ** (j - 1)
                              - (1.0 + j) * np.asarray(r) ** j
                              ) * np.exp(-(1.0 + j) * np.asarray(r))
            return eta, deta

    amp = delta * float(np.max(np.abs(prof(grid))))
    worst = math.inf
    for j in range(1, n + 1):
        eta, deta = bump(j)
        if amp == 0.0:
            pert = prof
        else:
            pert = transplant.RadialProfile(
                values=lambda x, e=eta: prof(x) + amp * e(x),
                derivative=lambda x, de=deta: prof.d(x) + amp * de(x),
                domain=prof.domain, dim=prof.dim, radius=prof.radius,
                label=f"{prof.label}+bump{j}")
        rep = evaluate_case(family, spec, m, pert, constants, tol=tol)
        worst = min(worst, rep.deficit)
    return worst
