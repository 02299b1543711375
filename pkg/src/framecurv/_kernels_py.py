"""Pure-numpy implementations of the hot kernels.

These are the reference versions; ``_kernels_c`` mirrors the same signatures
in Cython. Index conventions used throughout the package:

* ``dg[c, a, b] = d_c g_ab`` and ``d2g[d, c, a, b] = d_d d_c g_ab``
* ``gam[l, a, b] = Gamma^l_ab``
* ``rm[i, j, k, l]`` is component ``l`` of ``R(d_i, d_j) d_k`` with
  ``R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]``.
"""

import numpy as np


def christoffel_from_derivs(ginv, dg):
    """Second-kind Christoffel symbols from the inverse metric and dg."""
    first = 0.5 * (
        np.transpose(dg, (1, 0, 2)) + np.transpose(dg, (1, 2, 0)) - dg
    )  # first[c, a, b] = Gamma_{c, ab}
    return np.einsum("lc,cab->lab", ginv, first)


def curvature_from_derivs(ginv, dg, d2g):
    """Return ``(gam, dgam, rm)`` from a metric's first two derivatives.

    ``dgam[e, l, a, b] = d_e Gamma^l_ab``.
    """
    first = 0.5 * (np.transpose(dg, (1, 0, 2)) + np.transpose(dg, (1, 2, 0)) - dg)
    gam = np.einsum("lc,cab->lab", ginv, first)
    # d_e first[c, a, b]
    dfirst = 0.5 * (
        np.transpose(d2g, (0, 2, 1, 3))
        + np.transpose(d2g, (0, 2, 3, 1))
        - d2g
    )
    dginv = -np.einsum("lc,ecd,dm->elm", ginv, dg, ginv)
    dgam = np.einsum("elc,cab->elab", dginv, first) + np.einsum(
        "lc,ecab->elab", ginv, dfirst
    )
    rm = (
        np.einsum("iljk->ijkl", dgam)
        - np.einsum("jlik->ijkl", dgam)
        + np.einsum("mjk,lim->ijkl", gam, gam)
        - np.einsum("mik,ljm->ijkl", gam, gam)
    )
    return gam, dgam, rm


def natural_chart_metric(gx, gam, u, alpha, beta):
    """Chart metric of the natural frame-bundle metric at ``(x, u)``.

    ``u[j, i]`` is component ``j`` of frame vector ``i``; ``alpha[i]`` and
    ``beta[i]`` are the weights already evaluated at ``|u_i|^2``. Chart
    coordinates are ordered ``(x, u_1, ..., u_n)``.
    """
    n = gx.shape[0]
    N = n + n * n
    gu = gx @ u  # gu[:, i] = g u_i
    # lifted vertical components of d/dx_a: s[i, j, a] = Gamma^j_ca u^c_i
    s = np.einsum("jca,ci->ija", gam, u)
    out = np.zeros((N, N))
    out[:n, :n] = gx
    for i in range(n):
        vi = alpha[i] * gx + beta[i] * np.outer(gu[:, i], gu[:, i])
        si = s[i]
        vs = vi @ si
        out[:n, :n] += si.T @ vs
        sl = slice(n + i * n, n + (i + 1) * n)
        out[sl, :n] = vs
        out[:n, sl] = vs.T
        out[sl, sl] = vi
    return out


def cholesky_pivots(m):
    """Cholesky factor and pivots; stops at the first nonpositive pivot.

    Returns ``(L, pivots, k)`` where ``k`` is the 0-based index of the first
    failing pivot, or ``-1`` on success.
    """
    n = m.shape[0]
    L = np.zeros_like(m, dtype=float)
    pivots = np.zeros(n)
    for k in range(n):
        d = m[k, k] - L[k, :k] @ L[k, :k]
        pivots[k] = d
        if not d > 0.0:
            return L, pivots, k
        L[k, k] = np.sqrt(d)
        L[k + 1 :, k] = (m[k + 1 :, k] - L[k + 1 :, :k] @ L[k, :k]) / L[k, k]
    return L, pivots, -1
