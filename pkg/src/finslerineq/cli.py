"""Command-line interface.

Subcommands:
  constants   print the sharp constants table for one family (or all)
  verify      evaluate one inequality on one profile
  suite       run every case listed in a JSON config file
  plotdata    emit a profile sampled on a boundary-refined grid

Exit status: 0 all checks passed, 1 at least one verification failed,
2 usage or configuration error.  Output for a given config and seed is
byte-identical across runs (sorted keys, no timestamps).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import norms, transplant
from .config import (CONFIG_ENV_VAR, SCHEMA_VERSION, CaseConfig, RunConfig,
                     load_config)
from .errors import FinslerError, InputError
from .inequalities import (ExtremalSpec, evaluate_case, extremal_profile,
                           moser_profile, sharp_constants)

__all__ = ["main", "build_case", "plot_grid"]

_FAMILIES = ("sobolev", "gn", "nash", "logsob", "poincare", "trace",
             "trudinger_moser")

# family -> (map kind, p used by the transplant map as a function of param)
_MAP_KIND = {
    "sobolev": "interior", "gn": "interior", "nash": "interior",
    "logsob": "interior", "poincare": "exterior", "trace": "trace",
    "trudinger_moser": "planar",
}

_DEFAULT_PARAM = {"sobolev": 2.0, "gn": 2.0, "nash": None, "logsob": 2.0,
                  "poincare": 2.0, "trace": 2.0, "trudinger_moser": None}

# descriptive names for the constants table
_VALUE_TAGS = {
    "sobolev": {"S": "best_constant", "p_star": "critical_exponent",
                "p_prime": "conjugate_exponent"},
    "gn": {"A": "best_constant", "theta": "interpolation_exponent"},
    "nash": {"B": "best_constant", "mu": "bessel_frequency",
             "lambda1_neumann": "neumann_eigenvalue"},
    "logsob": {"L": "best_constant"},
    "poincare": {"lambda1": "first_eigenvalue"},
    "trace": {"S_T": "best_constant", "p_star_trace": "critical_exponent"},
    "trudinger_moser": {"energy_budget": "energy_budget"},
}

_EXTREMAL_DEFAULTS = {
    "sobolev": {"a": 1.0, "b": 1.0},
    "gn": {"sigma": 1.0, "C": 1.0},
    "nash": {"lam": 1.0, "C": 1.0},
    "logsob": {"sigma": 1.0},
    "poincare": {},
    "trace": {"eps": 1.0, "C": 1.0},
}


def _map_p(family: str, param) -> float:
    if family in ("sobolev", "logsob", "poincare", "trace"):
        return float(param)
    return 2.0


def _norm_from_dict(d, dim: int) -> norms.NormSpec:
    d = d or {"kind": "euclidean"}
    if d["kind"] == "euclidean":
        return norms.NormSpec.euclidean(dim)
    weights = d.get("weights")
    if weights is None or len(weights) != dim:
        raise InputError(
            f"weighted_lq norm needs exactly {dim} weights for this case")
    return norms.NormSpec.weighted_lq(d.get("q", 2.0), weights)


def _linear_cutoff(m: transplant.TransplantMap) -> transplant.RadialProfile:
    R = m.R

    def V(s):
        return 1.0 - np.asarray(s, float) / R

    def dV(s):
        return np.full_like(np.asarray(s, float), -1.0 / R)

    return transplant.RadialProfile(values=V, derivative=dV, domain="ball",
                                    dim=m.trans_dim, radius=R,
                                    label="linear_cutoff")


def build_case(case: CaseConfig, run_norm=None):
    """Resolve one case config into (norm spec, map, profile, constants)."""
    family = case.family
    if family not in _FAMILIES:
        raise InputError(f"unknown family {family!r}")
    param = case.param if case.param is not None else _DEFAULT_PARAM[family]
    if param is None and family in ("sobolev", "gn", "logsob", "poincare",
                                    "trace"):
        raise InputError(f"{family} needs a parameter")
    m = transplant.TransplantMap(kind=_MAP_KIND[family], N=case.N,
                                 p=_map_p(family, param), R=case.R)
    # the norm lives in the transplant dimension (N - 1 for the trace family)
    spec = _norm_from_dict(case.norm or run_norm, m.trans_dim)
    constants = sharp_constants(family, case.N, param, spec=spec, R=case.R)

    pp = dict(case.profile_params)
    if case.profile == "extremal":
        if family == "trudinger_moser":
            raise InputError(
                "no extremal profile is exposed for trudinger_moser; "
                "use profile 'moser' with parameter k")
        params = dict(_EXTREMAL_DEFAULTS[family])
        params.update(pp)
        if family == "gn":
            params["q"] = param
        profile = extremal_profile(family, ExtremalSpec(family, params), m)
    elif case.profile == "moser":
        if family != "trudinger_moser":
            raise InputError("profile 'moser' belongs to trudinger_moser")
        profile = moser_profile(m, int(pp.get("k", 3)))
    elif case.profile == "linear-cutoff":
        if family in ("trace", "trudinger_moser"):
            raise InputError(
                f"profile 'linear-cutoff' is not available for {family}")
        profile = _linear_cutoff(m)
    else:
        raise InputError(f"unknown profile {case.profile!r}")
    return spec, m, profile, constants


def _run_case(case: CaseConfig, tol: float, run_norm=None):
    spec, m, profile, constants = build_case(case, run_norm)
    extremal = case.extremal
    if extremal is None:
        extremal = case.profile == "extremal"
    return evaluate_case(case.family, spec, m, profile, constants,
                         tol=tol, extremal=extremal)


def plot_grid(R: float, points: int = 96, refine: int = 8) -> np.ndarray:
    """Strictly increasing grid on (0, R) with geometric refinement toward
    the boundary: s_j = R (1 - 2^{-j/refine}), j = 1..points."""
    j = np.arange(1, points + 1, dtype=float)
    return R * (1.0 - 2.0 ** (-j / refine))


def _halfline_grid(points: int = 96, refine: int = 8) -> np.ndarray:
    j = np.arange(points, dtype=float)
    return 2.0 ** (j / refine - 6.0)


# ---------------------------------------------------------------- output

def _emit(doc: dict, rows, header, fmt: str, out):
    """Write a result either as JSON (the full doc) or CSV (the rows)."""
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_rows(reports):
    rows = []
    for r in reports:
        d = r.to_dict()
        rows.append([d["family"], d["label"],
                     json.dumps(d["params"], sort_keys=True),
                     repr(d["lhs"]), repr(d["rhs"]), repr(d["ratio"]),
                     repr(d["deficit"]), repr(d["error_budget"]),
                     str(d["pass"]).lower(), d["notes"]])
    return rows


_REPORT_HEADER = ["family", "label", "params", "lhs", "rhs", "ratio",
                  "deficit", "error_budget", "pass", "notes"]


# ---------------------------------------------------------------- commands

def _cmd_constants(args) -> int:
    families = _FAMILIES if args.family == "all" else (args.family,)
    rows = []
    for family in families:
        param = args.param if args.param is not None else _DEFAULT_PARAM[family]
        c = sharp_constants(family, args.N, param, R=args.R)
        tags = _VALUE_TAGS[family]
        for key in sorted(c.values):
            rows.append([f"{family}_{tags[key]}", f"{c.values[key]:.15g}"])
        for key in sorted(c.tilde):
            rows.append([f"{family}_{tags[key]}_tilde", f"{c.tilde[key]:.15g}"])
        rows.append([f"{family}_geometric_prefactor", f"{c.prefactor:.15g}"])
    doc = {"schema_version": SCHEMA_VERSION, "N": args.N, "R": args.R,
           "constants": {name: float(v) for name, v in rows}}
    _emit(doc, rows, ["name", "value"], args.format, args.out)
    return 0


def _case_from_args(args) -> CaseConfig:
    pp = {}
    for item in args.profile_param or ():
        if "=" not in item:
            raise InputError(f"--profile-param expects name=value, got {item!r}")
        name, _, value = item.partition("=")
        pp[name] = float(value)
    norm = None
    if args.norm == "weighted_lq":
        if not args.norm_weights:
            raise InputError("--norm weighted_lq needs --norm-weights")
        norm = {"kind": "weighted_lq", "q": args.norm_q,
                "weights": [float(w) for w in args.norm_weights.split(",")]}
    return CaseConfig(family=args.family, N=args.N, param=args.param,
                      R=args.R, profile=args.profile, extremal=args.extremal,
                      profile_params=pp, norm=norm)


def _cmd_verify(args) -> int:
    case = _case_from_args(args)
    report = _run_case(case, tol=args.tol)
    doc = {"schema_version": SCHEMA_VERSION, "seed": args.seed,
           "reports": [report.to_dict()]}
    _emit(doc, _report_rows([report]), _REPORT_HEADER, args.format, args.out)
    return 0 if report.passed else 1


def _cmd_suite(args) -> int:
    cfg = load_config(args.config)
    reports = [_run_case(c, tol=cfg.tol, run_norm=cfg.norm)
               for c in cfg.cases]
    doc = {"schema_version": SCHEMA_VERSION, "seed": cfg.seed,
           "reports": [r.to_dict() for r in reports]}
    _emit(doc, _report_rows(reports), _REPORT_HEADER, args.format, args.out)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_plotdata(args) -> int:
    case = _case_from_args(args)
    _, m, profile, _ = build_case(case)
    if getattr(profile, "domain", "ball") == "ball":
        grid = plot_grid(m.R, args.points)
    else:
        grid = _halfline_grid(args.points)
    vals = np.asarray(profile.values(grid), float)
    ders = np.asarray(profile.derivative(grid), float)
    rows = [[repr(float(x)), repr(float(v)), repr(float(d))]
            for x, v, d in zip(grid, vals, ders)]
    doc = {"schema_version": SCHEMA_VERSION, "label": profile.label,
           "domain": profile.domain,
           "grid": [float(x) for x in grid],
           "values": [float(v) for v in vals],
           "derivative": [float(d) for d in ders]}
    _emit(doc, rows, ["s", "value", "derivative"], args.format, args.out)
    return 0


# ---------------------------------------------------------------- parser

def _add_common(p, profile=True):
    p.add_argument("--family", required=True,
                   choices=_FAMILIES, help="inequality family")
    p.add_argument("--N", type=int, default=3, help="ambient dimension")
    p.add_argument("--param", type=float, default=None,
                   help="p (or q for gn); family default when omitted")
    p.add_argument("--R", type=float, default=1.0, help="ball radius")
    if profile:
        p.add_argument("--profile", default="extremal",
                       help="extremal | linear-cutoff | moser")
        p.add_argument("--profile-param", action="append", metavar="NAME=VAL",
                       help="extremal/profile parameter, repeatable")
        p.add_argument("--norm", choices=["euclidean", "weighted_lq"],
                       default="euclidean")
        p.add_argument("--norm-q", type=float, default=2.0,
                       help="exponent for --norm weighted_lq")
        p.add_argument("--norm-weights", default="",
                       help="comma-separated weights for --norm weighted_lq")


def _add_output(p):
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None, help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="finslerineq",
        description="Verify sharp functional inequalities for Finsler norms.")
    sub = ap.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("constants", help="print sharp constants")
    pc.add_argument("--family", default="all", choices=_FAMILIES + ("all",))
    pc.add_argument("--N", type=int, default=3)
    pc.add_argument("--param", type=float, default=None)
    pc.add_argument("--R", type=float, default=1.0)
    _add_output(pc)
    pc.set_defaults(func=_cmd_constants)

    pv = sub.add_parser("verify", help="evaluate one inequality")
    _add_common(pv)
    pv.add_argument("--extremal", action="store_true", default=None,
                    help="require near-equality as well")
    pv.add_argument("--tol", type=float, default=1e-8)
    pv.add_argument("--seed", type=int, default=0)
    _add_output(pv)
    pv.set_defaults(func=_cmd_verify)

    ps = sub.add_parser("suite", help="run cases from a JSON config")
    ps.add_argument("--config", default=None,
                    help=f"config path (default: ${CONFIG_ENV_VAR})")
    _add_output(ps)
    ps.set_defaults(func=_cmd_suite)

    pp = sub.add_parser("plotdata", help="sample a profile on a plot grid")
    _add_common(pp)
    pp.add_argument("--extremal", action="store_true", default=None,
                    help=argparse.SUPPRESS)
    pp.add_argument("--points", type=int, default=96)
    _add_output(pp)
    pp.set_defaults(func=_cmd_plotdata)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except FinslerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
