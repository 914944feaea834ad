"""Norms, dual gauges, Wulff measures, and the polar formula."""

import math

import numpy as np
import pytest

from finslerineq import norms, quadrature
from finslerineq.errors import DomainError, InputError, ModelError

# symmetric positive definite quadratic gauge used as the generic test case:
# H(xi) = sqrt(xi^T A xi) has the closed-form dual H0(x) = sqrt(x^T A^{-1} x)
A_SPD = np.array([[2.0, 0.3, 0.1],
                  [0.3, 1.5, 0.2],
                  [0.1, 0.2, 1.0]])
A_INV = np.linalg.inv(A_SPD)


def _quadratic_gauge():
    def H(xi):
        xi = np.asarray(xi, float)
        return np.sqrt(np.einsum("...i,ij,...j->...", xi, A_SPD, xi))
    return norms.NormSpec.generic(H, dim=3, label="spd_quadratic")


def _sample_points(dim, n, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, dim))
    return X[np.linalg.norm(X, axis=1) > 1e-3]


def test_euclidean_norm_and_dual():
    spec = norms.NormSpec.euclidean(3)
    x = np.array([3.0, 0.0, 4.0])
    assert norms.norm_eval(spec, x) == pytest.approx(5.0, rel=1e-15)
    assert norms.dual_eval(spec, x) == pytest.approx(5.0, rel=1e-15)
    np.testing.assert_allclose(norms.norm_grad(spec, x), x / 5.0, atol=1e-14)


def test_weighted_lq_dual_is_conjugate_with_inverse_weights():
    spec = norms.NormSpec.weighted_lq(4.0, (1.0, 2.0, 0.5))
    dual = norms.dual_spec(spec)
    assert dual.kind == "weighted_lq"
    assert dual.q == pytest.approx(4.0 / 3.0, rel=1e-15)
    np.testing.assert_allclose(dual.weights, (1.0, 0.5, 2.0), rtol=1e-15)
    # duality pairing: x . xi <= H(xi) H0(x), tight over the sample
    rng = np.random.default_rng(5)
    X = rng.standard_normal((100, 3))
    Y = rng.standard_normal((100, 3))
    hx = np.array([norms.norm_eval(spec, x) for x in X])
    hy = np.array([norms.dual_eval(spec, y) for y in Y])
    assert np.all(np.einsum("ij,ij->i", X, Y) <= hx * hy * (1.0 + 1e-12))


def test_dual_of_dual_restores_builtin():
    spec = norms.NormSpec.weighted_lq(3.0, (0.7, 1.3, 2.0))
    back = norms.dual_spec(norms.dual_spec(spec))
    assert back.q == pytest.approx(spec.q, rel=1e-15)
    np.testing.assert_allclose(back.weights, spec.weights, rtol=1e-15)


def test_dual_spec_generic_rejected():
    with pytest.raises(InputError):
        norms.dual_spec(_quadratic_gauge())


def test_homogeneity_and_symmetry():
    for spec in (norms.NormSpec.euclidean(3),
                 norms.NormSpec.weighted_lq(4.0, (1.0, 2.0, 0.5)),
                 _quadratic_gauge()):
        for x in _sample_points(3, 20, 11):
            h = norms.norm_eval(spec, x)
            assert norms.norm_eval(spec, 3.5 * x) == pytest.approx(3.5 * h,
                                                                   rel=1e-12)
            assert norms.norm_eval(spec, -x) == pytest.approx(h, rel=1e-12)


def test_generic_dual_matches_quadratic_oracle():
    spec = _quadratic_gauge()
    X = _sample_points(3, 50, 7)
    got = norms.dual_eval_many(spec, X)
    want = np.sqrt(np.einsum("ij,jk,ik->i", X, A_INV, X))
    np.testing.assert_allclose(got, want, rtol=1e-9)


def test_euler_identity_for_norm_and_dual():
    # 1-homogeneity: H(xi) = grad H(xi) . xi, and the same for the dual
    for spec in (norms.NormSpec.euclidean(3),
                 norms.NormSpec.weighted_lq(4.0, (1.0, 2.0, 0.5))):
        for x in _sample_points(3, 30, 3):
            g = norms.norm_grad(spec, x)
            assert float(g @ x) == pytest.approx(norms.norm_eval(spec, x),
                                                 rel=1e-10)
            gd = norms.dual_grad(spec, x)
            assert float(gd @ x) == pytest.approx(norms.dual_eval(spec, x),
                                                  rel=1e-10)


def test_gradient_lies_on_dual_unit_sphere():
    # H0(grad H(xi)) = 1 for every xi != 0
    for spec in (norms.NormSpec.euclidean(3),
                 norms.NormSpec.weighted_lq(4.0, (1.0, 2.0, 0.5))):
        for x in _sample_points(3, 30, 13):
            g = norms.norm_grad(spec, x)
            assert norms.dual_eval(spec, g) == pytest.approx(1.0, rel=1e-10)


def test_dual_grad_rejects_origin():
    spec = norms.NormSpec.euclidean(3)
    with pytest.raises(DomainError):
        norms.dual_grad(spec, np.zeros(3))


def test_negative_gauge_callable_rejected():
    spec = norms.NormSpec.generic(lambda xi: -np.ones(np.shape(xi)[:-1]),
                                  dim=3)
    with pytest.raises(ModelError):
        norms.norm_eval(spec, np.array([1.0, 0.0, 0.0]))


def test_wulff_measure_euclidean_closed_form():
    for N in (3, 4, 5):
        kappa, src = norms.wulff_measure(norms.NormSpec.euclidean(N))
        exact = math.pi ** (N / 2.0) / math.gamma(N / 2.0 + 1.0)
        assert kappa == pytest.approx(exact, rel=1e-12)


def test_wulff_measure_weighted_lq_polytope_limits():
    # kappa of an l_{q'} ball with semi-axes 1/w: 2^N Gamma(1+1/q')^N /
    # Gamma(1+N/q') / prod w.  q' -> 1 and q' -> inf give the cross-polytope
    # and cube limits 2^N/N! and 2^N; large finite q tracks them closely
    near_cube, _ = norms.wulff_measure(
        norms.NormSpec.weighted_lq(1.0 + 1e-9, (1.0, 1.0, 1.0)))
    assert near_cube == pytest.approx(8.0, rel=1e-6)
    near_cross, _ = norms.wulff_measure(
        norms.NormSpec.weighted_lq(1e9, (1.0, 1.0, 1.0)))
    assert near_cross == pytest.approx(8.0 / 6.0, rel=1e-6)


def test_wulff_measure_generic_ellipsoid():
    # H(xi) = sqrt(xi^T A xi): the Wulff ball is the ellipsoid
    # {x^T A^{-1} x < 1} of volume kappa_3 sqrt(det A); Monte Carlo estimate
    kappa, src = norms.wulff_measure(_quadratic_gauge(), n=10_000, seed=3)
    exact = 4.0 * math.pi / 3.0 * math.sqrt(np.linalg.det(A_SPD))
    assert src.method == "monte_carlo"
    assert abs(kappa - exact) <= 5.0 * src.standard_error


def test_polar_formula_against_radial_moment():
    # int_{H0 < t} h(H0(x)) dx = N kappa int_0^t h(s) s^{N-1} ds
    spec = norms.NormSpec.euclidean(3)
    kappa = 4.0 * math.pi / 3.0
    got = norms.polar_integral(spec, lambda s: np.exp(-s), 2.0)
    exact = 3.0 * kappa * (2.0 - 10.0 * math.exp(-2.0))
    assert got == pytest.approx(exact, rel=1e-9)


def test_polar_formula_against_monte_carlo():
    spec = norms.NormSpec.weighted_lq(4.0, (1.0, 2.0, 0.5))
    h = lambda s: 1.0 / (1.0 + s * s)
    got = norms.polar_integral(spec, h, 1.0)
    est, se = quadrature.mc_wulff_integral(
        spec, 1.0, lambda X: h(norms.dual_eval_many(spec, X)), n=300_000,
        seed=2)
    assert abs(got - est) <= 3.0 * se


def test_norm_spec_dict_round_trip():
    spec = norms.NormSpec.weighted_lq(4.0, (1.0, 2.0, 0.5))
    back = norms.norm_spec_from_dict(norms.norm_spec_to_dict(spec))
    assert back == spec
    with pytest.raises(InputError):
        norms.norm_spec_to_dict(_quadratic_gauge())


def test_norm_spec_validation():
    with pytest.raises(InputError):
        norms.NormSpec.weighted_lq(1.0, (1.0, 1.0))      # q must exceed 1
    with pytest.raises(InputError):
        norms.NormSpec.weighted_lq(2.0, (1.0, -1.0))     # weights positive
    with pytest.raises(InputError):
        norms.NormSpec(kind="euclidean", dim=1)


try:
    from hypothesis import given, settings
    from hypothesis import strategies as st

    _vec = st.lists(st.floats(-50.0, 50.0), min_size=3, max_size=3)

    @settings(max_examples=50, deadline=None)
    @given(x=_vec, y=_vec)
    def test_triangle_inequality_property(x, y):
        spec = norms.NormSpec.weighted_lq(4.0, (1.0, 2.0, 0.5))
        x, y = np.array(x), np.array(y)
        assert norms.norm_eval(spec, x + y) <= (
            norms.norm_eval(spec, x) + norms.norm_eval(spec, y) + 1e-9)
except ImportError:  # pragma: no cover - hypothesis is an optional extra
    pass
