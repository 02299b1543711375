# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py`` (same signatures and layouts)."""

import numpy as np

from libc.math cimport sqrt


cdef void _first_kind(const double[:, :, ::1] dg, double[:, :, ::1] first) noexcept nogil:
    # first[c, a, b] = Gamma_{c, ab} = (d_a g_cb + d_b g_ca - d_c g_ab) / 2
    cdef Py_ssize_t n = dg.shape[0], a, b, c
    for c in range(n):
        for a in range(n):
            for b in range(n):
                first[c, a, b] = 0.5 * (dg[a, c, b] + dg[b, c, a] - dg[c, a, b])


cdef void _raise(const double[:, ::1] ginv, const double[:, :, ::1] first,
                 double[:, :, ::1] gam) noexcept nogil:
    cdef Py_ssize_t n = ginv.shape[0], l, a, b, c
    cdef double acc
    for l in range(n):
        for a in range(n):
            for b in range(n):
                acc = 0.0
                for c in range(n):
                    acc += ginv[l, c] * first[c, a, b]
                gam[l, a, b] = acc


def christoffel_from_derivs(ginv, dg):
    cdef const double[:, ::1] gi = np.ascontiguousarray(ginv, dtype=np.float64)
    cdef const double[:, :, ::1] d = np.ascontiguousarray(dg, dtype=np.float64)
    n = gi.shape[0]
    first = np.empty((n, n, n))
    gam = np.empty((n, n, n))
    _first_kind(d, first)
    _raise(gi, first, gam)
    return gam


def curvature_from_derivs(ginv, dg, d2g):
    cdef const double[:, ::1] gi = np.ascontiguousarray(ginv, dtype=np.float64)
    cdef const double[:, :, ::1] d1 = np.ascontiguousarray(dg, dtype=np.float64)
    cdef const double[:, :, :, ::1] d2 = np.ascontiguousarray(d2g, dtype=np.float64)
    cdef Py_ssize_t n = gi.shape[0], e, l, a, b, c, m, i, j, k
    cdef double acc
    first_a = np.empty((n, n, n))
    gam_a = np.empty((n, n, n))
    dfirst_a = np.empty((n, n, n, n))
    dginv_a = np.empty((n, n, n))
    dgam_a = np.empty((n, n, n, n))
    rm_a = np.empty((n, n, n, n))
    cdef double[:, :, ::1] first = first_a, gam = gam_a, dginv = dginv_a
    cdef double[:, :, :, ::1] dfirst = dfirst_a, dgam = dgam_a, rm = rm_a
    with nogil:
        _first_kind(d1, first)
        _raise(gi, first, gam)
        for e in range(n):
            for c in range(n):
                for a in range(n):
                    for b in range(n):
                        dfirst[e, c, a, b] = 0.5 * (d2[e, a, c, b] + d2[e, b, c, a] - d2[e, c, a, b])
        # d_e g^{lm} = -g^{lc} d_e g_cd g^{dm}
        for e in range(n):
            for l in range(n):
                for m in range(n):
                    acc = 0.0
                    for c in range(n):
                        for a in range(n):
                            acc += gi[l, c] * d1[e, c, a] * gi[a, m]
                    dginv[e, l, m] = -acc
        for e in range(n):
            for l in range(n):
                for a in range(n):
                    for b in range(n):
                        acc = 0.0
                        for c in range(n):
                            acc += dginv[e, l, c] * first[c, a, b] + gi[l, c] * dfirst[e, c, a, b]
                        dgam[e, l, a, b] = acc
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        acc = dgam[i, l, j, k] - dgam[j, l, i, k]
                        for m in range(n):
                            acc += gam[m, j, k] * gam[l, i, m] - gam[m, i, k] * gam[l, j, m]
                        rm[i, j, k, l] = acc
    return gam_a, dgam_a, rm_a


def natural_chart_metric(gx, gam, u, alpha, beta):
    cdef const double[:, ::1] g = np.ascontiguousarray(gx, dtype=np.float64)
    cdef const double[:, :, ::1] gm = np.ascontiguousarray(gam, dtype=np.float64)
    cdef const double[:, ::1] uu = np.ascontiguousarray(u, dtype=np.float64)
    cdef const double[::1] al = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef const double[::1] be = np.ascontiguousarray(beta, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0], N = n + n * n, i, j, k, a, b, c, off
    cdef double acc
    out_a = np.zeros((N, N))
    s_a = np.empty((n, n))
    v_a = np.empty((n, n))
    vs_a = np.empty((n, n))
    gu_a = np.empty(n)
    cdef double[:, ::1] out = out_a, s = s_a, v = v_a, vs = vs_a
    cdef double[::1] gu = gu_a
    with nogil:
        for a in range(n):
            for b in range(n):
                out[a, b] = g[a, b]
        for i in range(n):
            off = n + i * n
            for a in range(n):
                acc = 0.0
                for c in range(n):
                    acc += g[a, c] * uu[c, i]
                gu[a] = acc
            for a in range(n):
                for b in range(n):
                    v[a, b] = al[i] * g[a, b] + be[i] * gu[a] * gu[b]
            # s[j, a] = Gamma^j_ca u^c_i
            for j in range(n):
                for a in range(n):
                    acc = 0.0
                    for c in range(n):
                        acc += gm[j, c, a] * uu[c, i]
                    s[j, a] = acc
            for j in range(n):
                for a in range(n):
                    acc = 0.0
                    for k in range(n):
                        acc += v[j, k] * s[k, a]
                    vs[j, a] = acc
            for a in range(n):
                for b in range(n):
                    acc = 0.0
                    for j in range(n):
                        acc += s[j, a] * vs[j, b]
                    out[a, b] += acc
            for j in range(n):
                for a in range(n):
                    out[off + j, a] = vs[j, a]
                    out[a, off + j] = vs[j, a]
                for k in range(n):
                    out[off + j, off + k] = v[j, k]
    return out_a


def cholesky_pivots(m):
    cdef const double[:, ::1] A = np.ascontiguousarray(m, dtype=np.float64)
    cdef Py_ssize_t n = A.shape[0], k, r, j
    cdef Py_ssize_t fail = -1
    cdef double d, acc
    L_a = np.zeros((n, n))
    piv_a = np.zeros(n)
    cdef double[:, ::1] L = L_a
    cdef double[::1] piv = piv_a
    with nogil:
        for k in range(n):
            d = A[k, k]
            for j in range(k):
                d -= L[k, j] * L[k, j]
            piv[k] = d
            if not d > 0.0:
                fail = k
                break
            L[k, k] = sqrt(d)
            for r in range(k + 1, n):
                acc = A[r, k]
                for j in range(k):
                    acc -= L[r, j] * L[k, j]
                L[r, k] = acc / L[k, k]
    return L_a, piv_a, int(fail)
