"""One- and two-dimensional numerical integration.

``integrate_finite`` wraps an adaptive Gauss-Kronrod rule (QUADPACK).  The
endpoint-singular and half-line routines are double-exponential rules
implemented here: tanh-sinh on a finite interval and exp-sinh on (0, inf),
with level doubling until two successive levels agree.  ``mc_wulff_integral``
does reproducible hit-or-miss Monte Carlo over a Wulff ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _sciint

from .errors import DivergenceError, DomainError, EfficiencyError, PrecisionError

__all__ = [
    "QuadResult",
    "integrate_finite",
    "integrate_singular",
    "integrate_halfline",
    "integrate_2d",
    "mc_wulff_integral",
]

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool


class _Counter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def _feval(f, xs, counter):
    """Evaluate f at an array of abscissas, vectorized when f allows it."""
    xs = np.asarray(xs, dtype=float)
    counter.n += xs.size
    try:
        out = np.asarray(f(xs), dtype=float)
        if out.shape == xs.shape:
            return out
    except Exception:
        pass
    return np.array([float(f(x)) for x in xs])


def integrate_finite(f, a: float, b: float, tol: float = 1e-10) -> QuadResult:
    """Adaptive Gauss-Kronrod integration of f on (a, b) to relative tol."""
    if not b > a:
        raise DomainError(f"integrate_finite needs b > a, got ({a}, {b})")
    counter = _Counter()

    def wrapped(x):
        counter.n += 1
        return f(x)

    out = _sciint.quad(wrapped, a, b, epsabs=1e-300, epsrel=tol,
                       limit=10_000, full_output=1)
    value, abserr = out[0], out[1]
    converged = len(out) < 4  # QUADPACK appends a message on failure
    return QuadResult(float(value), float(abserr), counter.n, converged)


def _tanh_sinh_level(f, a, b, h, t_max, counter):
    """Trapezoid sum of the tanh-sinh transformed integrand at spacing h."""
    c = 0.5 * (b - a)
    j = np.arange(0, int(t_max / h) + 1)
    t = j * h
    u = _HALF_PI * np.sinh(t)
    eu = np.exp(-u)
    gap = 2.0 * eu * eu / (1.0 + eu * eu)       # 1 - tanh(u), stable for u >= 0
    sech = 2.0 * eu / (1.0 + eu * eu)
    w = c * _HALF_PI * np.cosh(t) * sech * sech

    total = 0.0
    tail_ok = True
    for sign in (+1, -1):
        x = b - c * gap if sign > 0 else a + c * gap
        keep = (x > a) & (x < b) & (w > 0.0)
        if sign > 0:
            keep[0] = False  # center node counted once, on the negative pass
        xs, ws = x[keep], w[keep]
        vals = _feval(f, xs, counter)
        terms = ws * vals
        bad = ~np.isfinite(terms)
        if bad.any():
            raise DivergenceError("non-finite integrand inside the interval")
        total += terms.sum()
        # non-integrable endpoints leave non-negligible terms at the edge
        if terms.size and abs(terms[-1]) > 1e-3 * (abs(total) * h + 1e-300):
            tail_ok = False
    return h * total, tail_ok


def integrate_singular(f, a: float, b: float, tol: float = 1e-8,
                       max_level: int = 11) -> QuadResult:
    """tanh-sinh integration of f on (a, b); endpoints may be singular."""
    if not b > a:
        raise DomainError(f"integrate_singular needs b > a, got ({a}, {b})")
    counter = _Counter()
    t_max = 6.1
    prev = None
    history = []
    for level in range(max_level + 1):
        h = 1.0 / (1 << level)
        value, tail_ok = _tanh_sinh_level(f, a, b, h, t_max, counter)
        history.append(abs(value))
        # growth alone can be a narrow boundary layer resolved late; genuine
        # non-integrable endpoints also show non-decaying edge terms
        if (len(history) >= 3 and history[-1] > 8 * history[-2] > 64 * history[-3]
                and not tail_ok):
            raise DivergenceError("tanh-sinh levels diverge: singularity not integrable")
        if prev is not None:
            err = abs(value - prev)
            if err <= tol * max(abs(value), 1e-300) and level >= 2:
                if not tail_ok:
                    raise DivergenceError(
                        "edge terms do not decay: endpoint singularity not integrable")
                return QuadResult(float(value), float(err), counter.n, True)
        prev = value
    if not tail_ok:
        raise DivergenceError(
            "edge terms do not decay: endpoint singularity not integrable")
    return QuadResult(float(prev), abs(value - prev) if prev != value else math.inf,
                      counter.n, False)


def _expsinh_window(f, tol, counter):
    """Scan outward from t=0 at coarse spacing to find the significant window."""
    h = 0.5
    t_cap = math.asinh(690.0 / _HALF_PI)  # keep exp(pi/2 sinh t) in double range
    window = [0.0, 0.0]
    running = 0.0
    for direction, idx in ((+1, 1), (-1, 0)):
        small = 0
        grow = 0
        last = math.inf
        j = 1
        while True:
            t = direction * j * h
            if abs(t) > t_cap:
                if small == 0 and grow > 0:
                    raise DivergenceError("half-line integrand has a non-decaying tail")
                break
            x = math.exp(_HALF_PI * math.sinh(t))
            w = _HALF_PI * math.cosh(t) * x
            counter.n += 1
            try:
                v = float(f(x))
            except (OverflowError, FloatingPointError):
                v = math.nan
            term = w * v if math.isfinite(v) else math.nan
            mag = abs(term) if math.isfinite(term) else math.inf
            if math.isfinite(term):
                running += term
            if mag < tol * (abs(running) + 1e-300) or not math.isfinite(term):
                small += 1
                if small >= 3:
                    window[idx] = abs(t)
                    break
            else:
                small = 0
                grow = grow + 1 if mag > last else 0
                if grow >= 8 and mag > 1e6 * (abs(running) + 1.0):
                    raise DivergenceError("half-line integrand has a non-decaying tail")
                last = mag
            j += 1
        else:  # pragma: no cover
            pass
        if window[idx] == 0.0:
            window[idx] = min(abs(direction * j * h), t_cap)
    return window[0], window[1]  # (t_minus, t_plus)


def _expsinh_level(f, h, t_minus, t_plus, counter):
    j_lo = -int(t_minus / h)
    j_hi = int(t_plus / h)
    t = np.arange(j_lo, j_hi + 1) * h
    x = np.exp(_HALF_PI * np.sinh(t))
    w = _HALF_PI * np.cosh(t) * x
    keep = (x > 0.0) & np.isfinite(x)
    xs, ws = x[keep], w[keep]
    vals = _feval(f, xs, counter)
    terms = ws * vals
    terms[~np.isfinite(terms)] = 0.0  # window edges only; interior checked at scan
    return h * terms.sum()


def integrate_halfline(f, tol: float = 1e-10, max_level: int = 11) -> QuadResult:
    """Double-exponential (exp-sinh) integration of f on (0, inf).

    The significant t-window is located first by an outward scan that stops
    after three consecutive negligible panels; levels are then doubled inside
    the window until two successive estimates agree to tol.
    """
    counter = _Counter()
    with np.errstate(all="ignore"):
        t_minus, t_plus = _expsinh_window(f, max(tol, 1e-14), counter)
        t_minus += 0.5
        t_plus = min(t_plus + 0.5, math.asinh(690.0 / _HALF_PI))
        prev = None
        for level in range(1, max_level + 1):
            h = 1.0 / (1 << level)
            value = _expsinh_level(f, h, t_minus, t_plus, counter)
            if prev is not None:
                err = abs(value - prev)
                if err <= tol * max(abs(value), 1e-300) and level >= 3:
                    return QuadResult(float(value), float(err), counter.n, True)
            prev = value
    return QuadResult(float(value), abs(value - prev), counter.n, False)


def integrate_2d(f, R: float, tol: float = 1e-6, s_singular: bool = True) -> QuadResult:
    """Tensor integration of f(s, t) over (0, R) x (0, inf).

    Inner integral in s (tanh-sinh, tolerance tol/10, so endpoint singularities
    at s = R are allowed), outer in t over the half-line.
    """
    if R <= 0:
        raise DomainError("integrate_2d needs R > 0")
    counter = _Counter()
    inner_err = [0.0]
    peak = [0.0]

    def outer(t):
        # coarse screen: deep-tail t values contribute nothing to the outer
        # integral but can hide unresolvable boundary layers in s
        coarse, _ = _tanh_sinh_level(lambda s: f(s, t), 0.0, R, 0.25, 6.1, counter)
        if abs(coarse) < 1e-10 * peak[0]:
            inner_err[0] = max(inner_err[0], 1e-10 * peak[0])
            return coarse
        res = integrate_singular(lambda s: f(s, t), 0.0, R, tol / 10.0)
        counter.n += res.evaluations
        inner_err[0] = max(inner_err[0], res.error_estimate)
        peak[0] = max(peak[0], abs(res.value))
        return res.value

    out = integrate_halfline(outer, tol)
    err = out.error_estimate + inner_err[0]
    return QuadResult(out.value, err, counter.n, out.converged)


def integrate_2d_halfline(f, tol: float = 1e-6) -> QuadResult:
    """Tensor integration of f(r, t) over (0, inf) x (0, inf)."""
    counter = _Counter()
    inner_err = [0.0]

    def outer(t):
        res = integrate_halfline(lambda r: f(r, t), tol / 10.0)
        counter.n += res.evaluations
        inner_err[0] = max(inner_err[0], res.error_estimate)
        return res.value

    out = integrate_halfline(outer, tol)
    err = out.error_estimate + inner_err[0]
    return QuadResult(out.value, err, counter.n, out.converged)


def mc_wulff_integral(spec, R: float, g, n: int, seed: int = 0):
    """Monte Carlo integral of g over the Wulff ball of radius R.

    Uniform sampling in the bounding box of W_R with membership decided by the
    dual gauge; returns (estimate, standard_error).  Bit-for-bit reproducible
    for fixed (seed, n): a counter-based generator with a fixed chunking of the
    sample stream is used, independent of any parallelism.
    """
    from . import norms  # local import: norms also uses this module

    if R <= 0:
        raise DomainError("mc_wulff_integral needs R > 0")
    N = spec.dim
    half = np.array([R * norms.norm_eval(spec, _unit(N, i)) for i in range(N)])
    vbox = float(np.prod(2.0 * half))
    rng = np.random.Generator(np.random.Philox(key=seed))

    total = 0.0
    total_sq = 0.0
    accepted = 0
    chunk = 1 << 17
    done = 0
    while done < n:
        m = min(chunk, n - done)
        X = rng.uniform(-1.0, 1.0, size=(m, N)) * half
        inside = norms.dual_eval_many(spec, X) < R
        accepted += int(inside.sum())
        vals = np.zeros(m)
        if inside.any():
            Xi = X[inside]
            try:
                gv = np.asarray(g(Xi), dtype=float)
                if gv.shape != (Xi.shape[0],):
                    raise ValueError
            except Exception:
                gv = np.array([float(g(x)) for x in Xi])
            vals[inside] = gv
        total += vals.sum()
        total_sq += (vals * vals).sum()
        done += m
    if accepted < max(1, int(1e-4 * n)):
        raise EfficiencyError(
            f"Monte Carlo acceptance rate {accepted / n:.2e} below 1e-4")
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0)
    estimate = vbox * mean
    se = vbox * math.sqrt(var / n)
    return estimate, se


def _unit(N, i):
    e = np.zeros(N)
    e[i] = 1.0
    return e


def require_converged(res: QuadResult, what: str) -> QuadResult:
    """Raise PrecisionError (with the achieved estimate) if res did not converge."""
    if not res.converged:
        raise PrecisionError(f"quadrature did not converge for {what}",
                             estimate=res.value)
    return res
