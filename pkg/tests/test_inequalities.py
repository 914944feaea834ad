"""Behavior of the inequality evaluator beyond the extremal battery."""

import math
from dataclasses import replace

import numpy as np
import pytest

from finslerineq import (ExtremalSpec, NormSpec, evaluate_case,
                         extremal_profile, moser_profile, perturbation_check,
                         sharp_constants, transplant)
from finslerineq.errors import AdmissibilityError, InputError


def _interior(N=3, p=2.0, R=1.0):
    return transplant.TransplantMap(kind="interior", N=N, p=p, R=R)


def _scaled(profile, c):
    return replace(profile,
                   values=lambda x: c * profile.values(x),
                   derivative=lambda x: c * profile.derivative(x),
                   label=f"{profile.label}*{c}")


def _sobolev_case(N=3, p=2.0, R=1.0, a=1.0, b=1.0):
    m = _interior(N, p, R)
    spec = NormSpec.euclidean(N)
    prof = extremal_profile("sobolev", ExtremalSpec("sobolev",
                                                    {"a": a, "b": b}), m)
    consts = sharp_constants("sobolev", N, p, spec=spec, R=R)
    return spec, m, prof, consts


def test_extremal_reports_equality():
    spec, m, prof, consts = _sobolev_case()
    rep = evaluate_case("sobolev", spec, m, prof, consts, extremal=True)
    assert rep.passed
    assert abs(rep.deficit) <= rep.error_budget
    assert rep.ratio == pytest.approx(1.0, abs=1e-10)


def test_ratio_is_scale_invariant():
    spec, m, prof, consts = _sobolev_case()
    base = evaluate_case("sobolev", spec, m, prof, consts)
    for c in (0.5, 2.0, 7.0):
        rep = evaluate_case("sobolev", spec, m, _scaled(prof, c), consts)
        assert rep.ratio == pytest.approx(base.ratio, rel=1e-8), c


def test_reports_do_not_depend_on_ball_radius():
    # the same half-line extremal transplanted into balls of different radii
    # must give identical numbers: the radius only reparametrizes the ball
    a = _sobolev_case(R=1.0)
    b = _sobolev_case(R=3.0)
    ra = evaluate_case("sobolev", *a[:2], a[2], a[3])
    rb = evaluate_case("sobolev", *b[:2], b[2], b[3])
    assert rb.lhs == pytest.approx(ra.lhs, rel=1e-8)
    assert rb.rhs == pytest.approx(ra.rhs, rel=1e-8)


def test_gn_at_critical_q_reduces_to_sobolev():
    # theta = 1 at q = N/(N-2): the interpolation inequality degenerates to
    # the critical embedding, with equality on the same extremal profile
    N, q = 4, 2.0
    m = _interior(N, 2.0)
    spec = NormSpec.euclidean(N)
    prof = extremal_profile("sobolev", ExtremalSpec("sobolev",
                                                    {"a": 1.0, "b": 1.0}), m)
    consts = sharp_constants("gn", N, q, spec=spec)
    assert consts.values["theta"] == pytest.approx(1.0, abs=1e-14)
    rep = evaluate_case("gn", spec, m, prof, consts, extremal=True)
    assert rep.passed
    assert abs(rep.deficit) <= rep.error_budget


def test_perturbation_zero_delta_matches_base():
    spec, m, prof, consts = _sobolev_case()
    base = evaluate_case("sobolev", spec, m, prof, consts)
    worst = perturbation_check("sobolev", spec, m, prof, delta=0.0, n=2,
                               constants=consts)
    assert worst == pytest.approx(base.deficit, abs=1e-12)


def test_in_family_perturbation_stays_extremal():
    # moving to another member of the extremal family keeps equality
    spec, m, _, consts = _sobolev_case()
    prof = extremal_profile("sobolev", ExtremalSpec("sobolev",
                                                    {"a": 1.1, "b": 1.0}), m)
    rep = evaluate_case("sobolev", spec, m, prof, consts, extremal=True)
    assert rep.passed


def test_logsob_records_mass_renormalization():
    N = 3
    m = _interior(N, 2.0)
    spec = NormSpec.euclidean(N)
    prof = extremal_profile("logsob", ExtremalSpec("logsob",
                                                   {"sigma": 1.0, "C": 2.0}), m)
    consts = sharp_constants("logsob", N, 2.0, spec=spec)
    rep = evaluate_case("logsob", spec, m, prof, consts, extremal=True)
    assert rep.passed
    assert "mass_before_renormalization=" in rep.notes
    mass = float(rep.notes.split("=", 1)[1].split()[0])
    assert mass != pytest.approx(1.0, rel=1e-3)


def test_trudinger_moser_rejects_over_budget_profiles():
    N = 4
    m = transplant.TransplantMap(kind="planar", N=N, p=2.0, R=1.0)
    spec = NormSpec.euclidean(N)
    consts = sharp_constants("trudinger_moser", N, None, spec=spec)
    prof = moser_profile(m, 3)
    rep = evaluate_case("trudinger_moser", spec, m, prof, consts)
    assert rep.passed
    assert "energy=" in rep.notes
    with pytest.raises(AdmissibilityError):
        evaluate_case("trudinger_moser", spec, m, _scaled(prof, 1.1), consts)


def test_trudinger_moser_has_no_equality_claim():
    N = 4
    m = transplant.TransplantMap(kind="planar", N=N, p=2.0, R=1.0)
    spec = NormSpec.euclidean(N)
    consts = sharp_constants("trudinger_moser", N, None, spec=spec)
    with pytest.raises(InputError):
        evaluate_case("trudinger_moser", spec, m, moser_profile(m, 2),
                      consts, extremal=True)


def test_family_and_map_kind_must_match():
    spec, m, prof, consts = _sobolev_case()
    with pytest.raises(InputError):
        evaluate_case("gn", spec, m, prof, consts)   # gn constants needed
    ext = transplant.TransplantMap(kind="exterior", N=3, p=2.0, R=1.0)
    with pytest.raises(InputError):
        evaluate_case("sobolev", spec, ext, prof, consts)
