"""Closed-form sharp constants and their Finsler (tilde) variants.

Everything is assembled in log space from log_gamma and exponentiated once,
so Gamma ratios stay finite for dimensions up to at least 50.  The tilde
variant of each constant multiplies the classical one by a power of the
geometric prefactor omega_{N-1}/(N kappa_N) (one dimension down for the trace
family); for the euclidean norm that prefactor is exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .. import norms, specfun
from ..errors import DomainError
from .eigen import plap_first_eigenvalue

__all__ = ["SharpConstants", "sharp_constants", "logsob_normalization"]

FAMILIES = ("sobolev", "gn", "nash", "logsob", "poincare", "trace",
            "trudinger_moser")


@dataclass(frozen=True)
class SharpConstants:
    family: str
    N: int
    param: Optional[float]       # p, or q for the Gagliardo-Nirenberg family
    R: float
    prefactor: float             # omega/(N kappa) in the family's dimension
    values: dict = field(default_factory=dict)
    tilde: dict = field(default_factory=dict)
    notes: str = ""


def _lg(x: float) -> float:
    return specfun.log_gamma(x)


def _sobolev_constant(N: int, p: float) -> float:
    if p == 1.0:
        # printed with p still symbolic in the source; substituted at p=1 and
        # exposed for display only
        return math.exp(0.5 * math.log(math.pi) + math.log(N)
                        - (1.0 / N) * _lg(1.0 + N / 2.0))
    pp = p / (p - 1.0)
    return math.exp(
        (p / 2.0) * math.log(math.pi) + math.log(N)
        + (p - 1.0) * math.log((N - p) / (p - 1.0))
        + (p / N) * (_lg(N / p) + _lg(1.0 + N / pp) - _lg(N) - _lg(1.0 + N / 2.0)))


def _gn_constant(N: int, q: float):
    theta = N * (q - 1.0) / (q * (N + 2.0 - (N - 2.0) * q))
    ratio = (q + 1.0) / (q - 1.0)
    A = math.exp(
        (theta / 2.0) * math.log((q - 1.0) * (q + 1.0) / (2.0 * math.pi * N))
        + (1.0 / (2.0 * q)) * math.log((2.0 * (q + 1.0) - N * (q - 1.0)) / (2.0 * (q + 1.0)))
        + (theta / N) * (_lg(ratio) - _lg(ratio - N / 2.0)))
    return theta, A


def _logsob_constant(N: int, p: float) -> float:
    if p == 1.0:
        return math.exp(-math.log(N) - 0.5 * math.log(math.pi)
                        + (1.0 / N) * _lg(N / 2.0 + 1.0))
    pp = p / (p - 1.0)
    return math.exp(math.log(p / N) + (p - 1.0) * (math.log(p - 1.0) - 1.0)
                    - (p / 2.0) * math.log(math.pi)
                    + (p / N) * (_lg(N / 2.0 + 1.0) - _lg(N / pp + 1.0)))


def _trace_constant(N: int, p: float) -> float:
    return math.exp(
        ((p - 1.0) / 2.0) * math.log(math.pi)
        + (p - 1.0) * math.log((N - p) / (p - 1.0))
        + ((p - 1.0) / (N - 1.0)) * (_lg((N - 1.0) / (2.0 * (p - 1.0)))
                                     - _lg((N - 1.0) * p / (2.0 * (p - 1.0)))))


def logsob_normalization(N: int, p: float, sigma: float) -> float:
    """Amplitude that gives the log-Sobolev extremal exp(-r^{p'}/sigma) unit
    p-mass on R^N."""
    if not (1.0 < p < N):
        raise DomainError(f"logsob normalization needs 1 < p < N, got p={p}")
    if sigma <= 0:
        raise DomainError("sigma must be positive")
    pp = p / (p - 1.0)
    return math.exp(-(1.0 / p) * ((N / 2.0) * math.log(math.pi)
                                  + (N / pp) * math.log(sigma / p)
                                  + _lg(N / pp + 1.0) - _lg(N / 2.0 + 1.0)))


def sharp_constants(family: str, N: int, p_or_q: Optional[float] = None,
                    spec: Optional[norms.NormSpec] = None,
                    R: float = 1.0) -> SharpConstants:
    """Assemble every constant of a family, classical and tilde variants.

    For the trace family the norm must live in dimension N-1 (the Wulff
    geometry of the boundary transplant); all other families use dimension N.
    """
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; choose from {FAMILIES}")
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    if R <= 0:
        raise DomainError("R must be positive")

    geo_dim = N - 1 if family == "trace" else N
    if spec is None:
        spec = norms.NormSpec.euclidean(geo_dim)
    if spec.dim != geo_dim:
        raise DomainError(
            f"{family} constants need a norm in dimension {geo_dim}, got {spec.dim}")
    omega = specfun.sphere_area(geo_dim)
    kappa, _ = norms.wulff_measure(spec)
    pref = omega / (geo_dim * kappa)

    values: dict = {}
    tilde: dict = {}
    notes = ""

    if family == "sobolev":
        p = float(p_or_q)
        if not (1.0 <= p < N):
            raise DomainError(f"sobolev needs 1 <= p < N, got p={p}, N={N}")
        S = _sobolev_constant(N, p)
        if p == 1.0:
            notes = "p=1 constant is informational only; verification needs p > 1"
            values = {"S": S, "p_star": N / (N - 1.0)}
            tilde = {"S": S * pref ** (1.0 / values["p_star"] - 1.0)}
        else:
            ps = N * p / (N - p)
            values = {"S": S, "p_star": ps, "p_prime": p / (p - 1.0)}
            tilde = {"S": S * pref ** (p / ps - 1.0)}
    elif family == "gn":
        q = float(p_or_q)
        if N < 3 or not (1.0 < q <= N / (N - 2.0)):
            raise DomainError(f"gn needs N >= 3 and 1 < q <= N/(N-2), got q={q}, N={N}")
        theta, A = _gn_constant(N, q)
        values = {"theta": theta, "A": A}
        tilde = {"A": A * pref ** (theta / N)}
    elif family == "nash":
        if N < 3:
            raise DomainError(f"nash needs N >= 3, got N={N}")
        mu = specfun.bessel_first_zero(N / 2.0).value
        lam = mu * mu
        B = (2.0 * (1.0 + N / 2.0) ** (1.0 + 2.0 / N) * N ** (-1.0 + 2.0 / N)
             / (lam * omega ** (2.0 / N)))
        values = {"B": B, "mu": mu, "lambda1_neumann": lam}
        tilde = {"B": B * pref ** (2.0 / N)}
    elif family == "logsob":
        p = float(p_or_q)
        if not (1.0 <= p < N):
            raise DomainError(f"logsob needs 1 <= p < N, got p={p}, N={N}")
        L = _logsob_constant(N, p)
        values = {"L": L}
        tilde = {"L": L * pref}
        if p == 1.0:
            notes = "p=1 exposed for display only; excluded from verification"
    elif family == "poincare":
        p = float(p_or_q)
        if not (1.0 < p < N):
            raise DomainError(f"poincare needs 1 < p < N, got p={p}, N={N}")
        lam = plap_first_eigenvalue(N, p)
        values = {"lambda1": lam}
        tilde = {"lambda1": lam}   # the prefactor cancels between the two sides
    elif family == "trace":
        p = float(p_or_q)
        if N < 3 or not (1.0 < p < N - 1.0):
            raise DomainError(f"trace needs N >= 3 and 1 < p < N-1, got p={p}, N={N}")
        ST = _trace_constant(N, p)
        ps = (N - 1.0) * p / (N - p)
        values = {"S_T": ST, "p_star_trace": ps}
        tilde = {"S_T": ST * pref ** ((p - ps) / ps)}
    else:  # trudinger_moser
        if N < 3:
            raise DomainError(f"trudinger_moser needs N >= 3, got N={N}")
        budget = N * (N - 2.0) * kappa / (2.0 * math.pi)
        values = {"energy_budget": budget}
        tilde = {"energy_budget": budget}

    return SharpConstants(family=family, N=N, param=p_or_q, R=R,
                          prefactor=pref, values=values, tilde=tilde,
                          notes=notes)
