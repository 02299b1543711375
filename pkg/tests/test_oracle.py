import numpy as np
import pytest

from framecurv import oracle
from framecurv.base_manifold import christoffel, flat, polynomial_metric, space_form
from framecurv.frame_bundle import FramePoint, decompose_matrix, random_frame_point
from framecurv.metrics import cheeger_gromoll, natural_gram, sasaki

CG = cheeger_gromoll()


def test_flat_sasaki_chart_metric_is_identity():
    m = oracle.ChartMetric(sasaki(), flat(2))
    p = random_frame_point(np.random.default_rng(0), 2)
    np.testing.assert_array_equal(m(p.chart()), np.eye(6))


def test_flat_cheeger_gromoll_chart_metric_blocks():
    m = oracle.ChartMetric(CG, flat(2))
    q = FramePoint([0.3, 0.1], np.eye(2)).chart()
    M = m(q)
    np.testing.assert_array_equal(M[:2, :2], np.eye(2))
    assert not M[:2, 2:].any()
    # block k: alpha_k delta + beta_k (e . u_k)(e . u_k), t_k = 1
    np.testing.assert_allclose(M[2:4, 2:4], [[1.0, 0.0], [0.0, 0.5]])
    np.testing.assert_allclose(M[4:6, 4:6], [[0.5, 0.0], [0.0, 1.0]])
    assert not M[2:4, 4:6].any()


def test_chart_metric_is_gram_of_decomposition():
    rng = np.random.default_rng(1)
    g = space_form(3, -0.7)
    m = oracle.ChartMetric(CG, g)
    for _ in range(20):
        p = random_frame_point(rng, 3)
        E = decompose_matrix(p, g)
        np.testing.assert_allclose(m(p.chart()), E.T @ natural_gram(CG, g, p) @ E, atol=1e-12)


def test_fd_christoffel_constant_and_symmetric():
    q = random_frame_point(np.random.default_rng(2), 2).chart()
    np.testing.assert_allclose(oracle.fd_christoffel(oracle.ChartMetric(sasaki(), flat(2)), q), 0.0,
                               atol=1e-10)
    gam = oracle.fd_christoffel(oracle.ChartMetric(CG, space_form(2, 1.0)), q)
    np.testing.assert_allclose(gam, gam.transpose(0, 2, 1), atol=1e-8)


def test_fd_riemann_flat_sasaki():
    q = random_frame_point(np.random.default_rng(3), 2).chart()
    np.testing.assert_allclose(oracle.fd_riemann(oracle.ChartMetric(sasaki(), flat(2)), q), 0.0,
                               atol=1e-8)


def test_fd_geometry_of_base_metric():
    g = space_form(2, 1.0)
    x = np.array([0.3, -0.1])
    np.testing.assert_allclose(oracle.fd_christoffel(g.eval, x), christoffel(g, x), atol=1e-8)
    assert oracle.fd_scalar(g.eval, x) == pytest.approx(2.0, abs=1e-6)


def test_convergence_order():
    g = space_form(3, 1.0)
    x = np.array([0.3, -0.2, 0.1])
    assert 3.5 <= oracle.error_ratio(g.eval, x, christoffel(g, x)) <= 4.5
    p = random_frame_point(np.random.default_rng(4), 2)
    assert 3.5 <= oracle.convergence_ratio(oracle.ChartMetric(CG, space_form(2, 1.0)),
                                           p.chart()) <= 4.5


def test_compare_connection_flat_sasaki_exact():
    rep = oracle.compare_connection(sasaki(), flat(2), samples=10)
    assert rep.passed
    assert max(c.max_abs_err for c in rep.cases.values()) < 1e-9
    assert sorted(rep.cases) == sorted(oracle.CONNECTION_CASES)


def test_compare_connection_space_form():
    rep = oracle.compare_connection(CG, space_form(2, 1.0), samples=10, seed=3)
    assert rep.passed, rep.discrepancies


def test_compare_curvature_cases_and_scalar():
    rep = oracle.compare_curvature(CG, space_form(2, 0.5), samples=3, scalar_samples=2)
    assert rep.passed, rep.discrepancies
    assert set(rep.cases) == {"hhh", "hhv", "hvh", "hvv_ij", "hvv_ii", "vvh_ii", "vvh_ij",
                              "vvv_iii", "vvv_mixed", "scalar"}


def test_compare_curvature_non_constant_base():
    g = polynomial_metric(2, [(0, 0, 0.3, (2, 0)), (0, 1, 0.1, (1, 1)), (1, 1, -0.2, (0, 2))])
    rep = oracle.compare_curvature(CG, g, samples=2, seed=5)
    assert rep.passed, rep.discrepancies


def test_reports_deterministic():
    a = oracle.compare_connection(CG, space_form(2, 1.0), samples=4, seed=11).to_json()
    b = oracle.compare_connection(CG, space_form(2, 1.0), samples=4, seed=11).to_json()
    assert a == b


def test_case_result_merge_is_associative():
    rep = [oracle.compare_connection(CG, space_form(2, 1.0), samples=2, seed=s).cases["hh"]
           for s in range(3)]
    left = rep[0].merge(rep[1]).merge(rep[2])
    right = rep[0].merge(rep[1].merge(rep[2]))
    assert left.max_rel_err == right.max_rel_err and left.samples == right.samples == 6


def test_discrepancy_is_reported():
    res = oracle.CaseResult("demo", tolerance=1e-6)
    p = FramePoint([0.0, 0.0], np.eye(2))
    res.add(0, p, np.array([1.0]), np.array([1.5]))
    assert not res.passed and res.max_rel_err == pytest.approx(0.5 / 1.5)
