"""Kernel dispatch: compiled extension when importable, numpy otherwise.

Set ``FRAMECURV_PURE_PYTHON=1`` to force the numpy fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("FRAMECURV_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py

christoffel_from_derivs = _impl.christoffel_from_derivs
curvature_from_derivs = _impl.curvature_from_derivs
natural_chart_metric = _impl.natural_chart_metric
cholesky_pivots = _impl.cholesky_pivots

__all__ = [
    "BACKEND",
    "christoffel_from_derivs",
    "curvature_from_derivs",
    "natural_chart_metric",
    "cholesky_pivots",
]
