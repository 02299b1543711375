import os
import subprocess
import sys

import numpy as np
import pytest

from framecurv import _kernels_py, kernels

compiled = pytest.importorskip("framecurv._kernels_c")


def _inputs(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n))
    g = A @ A.T + n * np.eye(n)
    dg = rng.normal(size=(n, n, n))
    dg = dg + dg.transpose(0, 2, 1)
    d2g = rng.normal(size=(n, n, n, n))
    d2g = d2g + d2g.transpose(1, 0, 2, 3)
    d2g = d2g + d2g.transpose(0, 1, 3, 2)
    return g, np.linalg.inv(g), dg, d2g, rng


@pytest.mark.parametrize("n", [2, 3, 4])
def test_backends_agree(n):
    g, ginv, dg, d2g, rng = _inputs(n, n)
    np.testing.assert_allclose(compiled.christoffel_from_derivs(ginv, dg),
                               _kernels_py.christoffel_from_derivs(ginv, dg), atol=1e-13)
    for a, b in zip(compiled.curvature_from_derivs(ginv, dg, d2g),
                    _kernels_py.curvature_from_derivs(ginv, dg, d2g)):
        np.testing.assert_allclose(a, b, atol=1e-12)
    gam = _kernels_py.christoffel_from_derivs(ginv, dg)
    u = rng.normal(size=(n, n)) + 2 * np.eye(n)
    al, be = rng.uniform(0.5, 1.5, n), rng.uniform(0.0, 1.0, n)
    M = _kernels_py.natural_chart_metric(g, gam, u, al, be)
    np.testing.assert_allclose(compiled.natural_chart_metric(g, gam, u, al, be), M, atol=1e-12)
    for a, b in zip(compiled.cholesky_pivots(M), _kernels_py.cholesky_pivots(M)):
        np.testing.assert_allclose(a, b, atol=1e-12)


def test_cholesky_failure_index_agrees():
    M = np.diag([1.0, 2.0, -1.0, 4.0])
    assert compiled.cholesky_pivots(M)[2] == _kernels_py.cholesky_pivots(M)[2] == 2


def test_pure_python_switch():
    code = "import framecurv.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, FRAMECURV_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND == ("python" if os.environ.get("FRAMECURV_PURE_PYTHON") == "1" else "cython")
