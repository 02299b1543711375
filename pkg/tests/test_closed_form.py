import numpy as np
import pytest

from framecurv import closed_form as cf
from framecurv.base_manifold import flat, polynomial_metric, space_form
from framecurv.errors import DegeneratePlane, NotOrthonormal, WeightDomainError
from framecurv.frame_bundle import AffineField, FramePoint, LMTangent, random_frame_point
from framecurv.metrics import cheeger_gromoll, custom_rational, orthonormal_basis, sasaki
from framecurv.oracle import ChartMetric, fd_scalar, orthonormal_pair

CG = cheeger_gromoll()


def _point(seed, n=2):
    return random_frame_point(np.random.default_rng(seed), n)


def test_abc_sasaki_vanishes():
    for t in (0.0, 0.5, 9.0):
        k = cf.abc(sasaki(), t)
        assert (k.A, k.B, k.C) == (0.0, 0.0, 0.0)


def test_abc_cheeger_gromoll_origin():
    k = cf.abc(CG, 0.0)
    assert (k.A, k.B, k.C) == pytest.approx((0.0, 3.0, -3.0), abs=1e-15)


def test_abc_cheeger_gromoll_t1():
    # frozen: A alpha - B beta = (-1/8 - 7/8)/2 = -1/2 = C (alpha + t beta)
    k = cf.abc(CG, 1.0)
    assert (k.A, k.B, k.C) == pytest.approx((-0.125, 0.875, -0.5), abs=1e-15)
    for t in (0.25, 1.0, 4.0):
        assert abs(cf.remark_residual(CG, t)) < 1e-12


def test_abc_rejects_degenerate_weights():
    W = custom_rational([1.0], [1.0], [-1.0], [1.0])
    with pytest.raises(WeightDomainError):
        cf.abc(W, 2.0)


def test_flat_sasaki_connection():
    p = _point(1)
    Y = AffineField(p.x, [0.5, -1.0], [[1.0, 2.0], [0.0, 3.0]])
    X = cf.LiftedField.of([1.0, 1.0], "h", p.x)
    out = cf.connection(sasaki(), flat(2), p, X, cf.LiftedField(Y, "h"))
    np.testing.assert_allclose(out.h, [3.0, 3.0])
    assert not out.v.any()
    out = cf.connection(sasaki(), flat(2), p, cf.LiftedField.of([1.0, 0.0], 0, p.x),
                        cf.LiftedField(Y, 0))
    assert not out.flat().any()


def test_cross_fiber_vertical_connection_vanishes():
    p = _point(2)
    g = space_form(2, 1.0)
    out = cf.connection(CG, g, p, cf.LiftedField.of([1.0, 0.3], 0, p.x),
                        cf.LiftedField.of([0.2, 1.0], 1, p.x))
    assert not out.flat().any()


def test_nabla_U():
    p = _point(3)
    g = space_form(2, 1.0)
    X = cf.LiftedField.of([1.0, -0.5], "h", p.x)
    assert not cf.nabla_U(CG, g, p, X, 0).flat().any()
    # Sasaki: nabla_{X^{v,i}} U^i = X^{v,i}
    V = cf.LiftedField.of([1.0, -0.5], 1, p.x)
    np.testing.assert_allclose(cf.nabla_U(sasaki(), g, p, V, 1).v[1], [1.0, -0.5], atol=1e-15)


def test_nabla_U_cheeger_gromoll_coefficient():
    p = FramePoint([0.0, 0.0], np.eye(2))
    V = cf.LiftedField.of([0.0, 1.0], 0, p.x)
    # t = 1: (alpha + t alpha')/alpha = (1/2 - 1/4)/(1/2) and g(X, u) = 0
    np.testing.assert_allclose(cf.nabla_U(CG, flat(2), p, V, 0).v[0], [0.0, 0.5], atol=1e-15)


def test_curvature_flat_sasaki_zero():
    p = _point(4)
    rng = np.random.default_rng(4)
    for kinds in (("h", "h", "h"), ("h", 0, "h"), (1, 1, 1), ("h", 0, 1)):
        args = [cf.LiftedField.of(rng.normal(size=2), k, p.x) for k in kinds]
        assert not cf.curvature(sasaki(), flat(2), p, *args).flat().any()


def test_curvature_distinct_vertical_indices_vanish():
    p = _point(5, 3)
    rng = np.random.default_rng(5)
    args = [cf.LiftedField.of(rng.normal(size=3), k, p.x) for k in (0, 1, 2)]
    assert not cf.curvature(CG, space_form(3, 0.4), p, *args).flat().any()


def test_sasaki_fiber_flat():
    p = _point(6)
    rng = np.random.default_rng(6)
    args = [cf.LiftedField.of(rng.normal(size=2), 0, p.x) for _ in range(3)]
    np.testing.assert_array_equal(cf.curvature(sasaki(), space_form(2, 1.0), p, *args).flat(), 0.0)


def test_classify_cases():
    assert cf.classify("h", "h", "h") == "hhh"
    assert cf.classify("h", 0, 1) == "hvv_ij"
    assert cf.classify(0, 0, "h") == "vvh_ii"
    assert cf.classify(1, 1, 1) == "vvv_iii"
    assert cf.classify(0, "h", "h") is None


def test_sectional_flat_sasaki_zero():
    p = _point(7)
    rng = np.random.default_rng(7)
    A = LMTangent(rng.normal(size=2), rng.normal(size=(2, 2)))
    B = LMTangent(rng.normal(size=2), rng.normal(size=(2, 2)))
    assert cf.sectional(sasaki(), flat(2), p, A, B) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(DegeneratePlane):
        cf.sectional(sasaki(), flat(2), p, A, A * 2.0)


def test_sectional_plane_basis_invariance():
    p = _point(8)
    g = space_form(2, 0.7)
    rng = np.random.default_rng(8)
    A = LMTangent(rng.normal(size=2), rng.normal(size=(2, 2)))
    B = LMTangent(rng.normal(size=2), rng.normal(size=(2, 2)))
    k1 = cf.sectional(CG, g, p, A, B)
    k2 = cf.sectional(CG, g, p, A * 2.0 + B, A - B * 0.5)
    assert k1 == pytest.approx(k2, rel=1e-9)


def test_sectional_table_space_form_sasaki():
    p = FramePoint([0.0, 0.0], np.eye(2))
    tab = cf.sectional_table(sasaki(), space_form(2, 1.0), p, [1.0, 0.0], [0.0, 1.0])
    # kappa - 3/4 kappa^2 sum_i (g(X,u_i)^2 + g(Y,u_i)^2) = 1 - 3/4 * 2
    assert tab.hh == pytest.approx(-0.5)
    assert tab.hh_space_form == pytest.approx(-0.5)
    assert tab.vv_cross == 0.0
    assert not tab.positivity_hypothesis


def test_sectional_table_flat():
    p = _point(9)
    tab = cf.sectional_table(CG, flat(2), FramePoint(p.x, p.u), [1.0, 0.0], [0.0, 1.0])
    assert tab.hh == 0.0
    with pytest.raises(NotOrthonormal):
        cf.sectional_table(CG, flat(2), p, [1.0, 0.0], [1.0, 1.0])


def test_cheeger_gromoll_vv_value():
    # (-t s + t^2 + 3t + 3)/((1+t)^2 (1+s)) at t = 1, s = 0
    assert cf.cheeger_gromoll_vv(1.0, 0.0) == pytest.approx(7.0 / 4.0)
    assert cf.cheeger_gromoll_vv(2.0, 2.0) == pytest.approx(3.0 / 9.0)


def test_cheeger_gromoll_vv_matches_table():
    g = space_form(2, 0.5)
    p = FramePoint([0.1, -0.2], np.array([[0.9, 0.1], [-0.2, 0.6]]))
    geo = cf.PointGeometry(CG, g, p)
    X, Y = orthonormal_pair(np.random.default_rng(0), geo.gx)
    tab = cf.sectional_table(CG, g, p, X, Y, geo=geo)
    for i in range(2):
        s = geo.ip(X, geo.u(i)) ** 2 + geo.ip(Y, geo.u(i)) ** 2
        assert tab.vv[i] == pytest.approx(cf.cheeger_gromoll_vv(geo.t[i], s), rel=1e-12)


def test_scalar_flat_sasaki_zero():
    assert cf.scalar(sasaki(), flat(2), FramePoint([0.0, 0.0], np.eye(2))) == 0.0


def test_scalar_space_form_sasaki_identity_frame():
    # s = 2, and sum_{i,j,k} |R(e_i,e_j)u_k|^2 = 4 for kappa = 1, u = I
    p = FramePoint([0.0, 0.0], np.eye(2))
    assert cf.scalar(sasaki(), space_form(2, 1.0), p) == pytest.approx(1.0, abs=1e-12)


def test_scalar_agrees_with_trace_and_oracle():
    g = polynomial_metric(2, [(0, 0, 0.2, (2, 0)), (0, 1, 0.1, (1, 1)), (1, 1, -0.1, (0, 2))])
    W = custom_rational([1.0, 0.3], [1.0, 0.5], [0.4], [1.0, 1.0])
    p = FramePoint([0.2, -0.1], np.array([[0.8, 0.3], [-0.1, 0.7]]))
    val = cf.scalar(W, g, p)
    assert val == pytest.approx(cf.scalar_trace(W, g, p), rel=1e-10)
    ref = fd_scalar(ChartMetric(W, g), p.chart())
    assert abs(val - ref) / max(abs(ref), 1.0) < 1e-3


def test_scalar_basis_independent():
    g = space_form(2, 0.8)
    p = _point(10)
    gx = g.eval(p.x)
    theta = 0.7
    E = orthonormal_basis(gx) @ np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    assert cf.scalar(CG, g, p, basis=E) == pytest.approx(cf.scalar(CG, g, p), abs=1e-9)


def test_printed_scalar_agrees_for_sasaki_only():
    g = space_form(2, 1.0)
    p = _point(11)
    assert cf.scalar(sasaki(), g, p, printed=True) == pytest.approx(cf.scalar(sasaki(), g, p), abs=1e-12)
    assert abs(cf.scalar(CG, g, p, printed=True) - cf.scalar(CG, g, p)) > 1e-2


def test_proof_identity():
    g = polynomial_metric(3, [(0, 0, 0.2, (1, 1, 0)), (1, 2, 0.1, (0, 1, 1))])
    p = _point(12, 3)
    for k in range(3):
        lhs, rhs = cf.proof_identity(g, p, k)
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)
