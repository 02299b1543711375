"""Property checks on the closed-form geometry (torsion, compatibility, symmetries).

Each check samples random lifted tuples with a per-sample PRNG stream derived
from ``(seed, sample index)`` and returns a :class:`~framecurv.oracle.CaseResult`.
"""

from __future__ import annotations

import numpy as np

from . import closed_form as cf
from .base_manifold import MetricField
from .frame_bundle import HORIZONTAL, LMTangent, decompose_matrix, lie_bracket, lifted_field_chart
from .metrics import (
    WeightFunctions,
    cheeger_gromoll,
    custom_rational,
    natural_metric,
    sasaki,
)
from .oracle import (
    CaseResult,
    ChartMetric,
    _pair_indices,
    _random_affine,
    _sample_point,
    _sample_rng,
    orthonormal_pair,
)


def _random_kind(rng, n):
    k = int(rng.integers(n + 1))
    return HORIZONTAL if k == n else k


def _lift(V, k):
    return LMTangent.horizontal(V) if k == HORIZONTAL else LMTangent.vertical(V, k)


def random_tangent(rng, n) -> LMTangent:
    return LMTangent(rng.uniform(-1, 1, n), rng.uniform(-1, 1, (n, n)))


def torsion(W: WeightFunctions, g: MetricField, samples: int = 200, seed: int = 0,
            tol: float = 1e-9) -> CaseResult:
    """``nabla_X Y - nabla_Y X - [X, Y]`` on random lifted pairs."""
    res = CaseResult("torsion_free", tolerance=tol, reference="connection vs Lie brackets")
    n = g.dim
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        p = _sample_point(rng, n)
        geo = cf.PointGeometry(W, g, p)
        X, Y = _random_affine(rng, p.x, n), _random_affine(rng, p.x, n)
        kx, ky = _random_kind(rng, n), _random_kind(rng, n)
        LX, LY = cf.LiftedField(X, kx), cf.LiftedField(Y, ky)
        lhs = cf.connection(W, g, p, LX, LY, geo=geo) - cf.connection(W, g, p, LY, LX, geo=geo)
        res.add(idx, p, lhs.flat(), lie_bracket(X, Y, kx, ky, p, g).flat())
    return res


def metric_compatibility(W: WeightFunctions, g: MetricField, samples: int = 200, seed: int = 0,
                         tol: float = 1e-4, h: float = 1e-5) -> CaseResult:
    """``X gbar(Y, Z)`` (chart finite difference) vs the connection terms."""
    res = CaseResult("metric_compatible", tolerance=tol, reference="connection, metric compatibility")
    n = g.dim
    m = ChartMetric(W, g)
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        p = _sample_point(rng, n)
        geo = cf.PointGeometry(W, g, p)
        fields = [_random_affine(rng, p.x, n) for _ in range(3)]
        kinds = [_random_kind(rng, n) for _ in range(3)]
        LX, LY, LZ = (cf.LiftedField(f, k) for f, k in zip(fields, kinds))
        Xc, Yc, Zc = (lifted_field_chart(f, k, g) for f, k in zip(fields, kinds))
        q = p.chart()
        V = Xc(q)

        def f(qq):
            return Yc(qq) @ m(qq) @ Zc(qq)

        lhs = (f(q + h * V) - f(q - h * V)) / (2 * h)
        E = decompose_matrix(p, g)
        Ym = LMTangent.from_flat(E @ Yc(q))
        Zm = LMTangent.from_flat(E @ Zc(q))
        rhs = natural_metric(W, g, p, cf.connection(W, g, p, LX, LY, geo=geo), Zm) + natural_metric(
            W, g, p, Ym, cf.connection(W, g, p, LX, LZ, geo=geo)
        )
        res.add(idx, p, np.array([rhs]), np.array([lhs]))
    return res


def _gbar(W, g, p, A, B):
    return natural_metric(W, g, p, A, B)


def curvature_symmetries(W: WeightFunctions, g: MetricField, samples: int = 200, seed: int = 0,
                         tol: float = 1e-8) -> dict:
    """Antisymmetry, pair symmetry and first Bianchi on random lifted tuples."""
    n = g.dim
    out = {
        "antisymmetry": CaseResult("antisymmetry", tolerance=tol, reference="curvature"),
        "pair_symmetry": CaseResult("pair_symmetry", tolerance=tol,
                                    reference="curvature; vertical block is the A/B/C identity"),
        "bianchi": CaseResult("bianchi", tolerance=tol, reference="curvature, first Bianchi"),
    }
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        p = _sample_point(rng, n)
        geo = cf.PointGeometry(W, g, p)
        A, B, C, D = (_lift(rng.uniform(-1, 1, n), _random_kind(rng, n)) for _ in range(4))
        R = lambda a, b, c: cf.curvature(W, g, p, a, b, c, geo=geo)  # noqa: E731
        rab = R(A, B, C)
        out["antisymmetry"].add(idx, p, rab.flat(), (-R(B, A, C)).flat())
        lhs = _gbar(W, g, p, rab, D)
        rhs = _gbar(W, g, p, R(C, D, A), B)
        out["pair_symmetry"].add(idx, p, np.array([lhs]), np.array([rhs]))
        cyc = rab + R(B, C, A) + R(C, A, B)
        out["bianchi"].add(idx, p, cyc.flat(), np.zeros(cyc.flat().size))
    return out


def random_weights(rng) -> WeightFunctions:
    """Admissible rational weights: positive coefficients keep alpha, alpha+t beta > 0."""
    kind = int(rng.integers(4))
    if kind == 0:
        return sasaki()
    if kind == 1:
        return cheeger_gromoll()
    a_num = rng.uniform(0.2, 2.0, size=int(rng.integers(1, 3)))
    a_den = rng.uniform(0.2, 2.0, size=int(rng.integers(1, 4)))
    b_num = rng.uniform(0.0, 2.0, size=int(rng.integers(1, 3)))
    b_den = rng.uniform(0.2, 2.0, size=int(rng.integers(1, 3)))
    return custom_rational(a_num, a_den, b_num, b_den)


def remark_identity(samples: int = 1000, seed: int = 0, tol: float = 1e-10) -> CaseResult:
    """``A alpha - B beta = C (alpha + t beta)``, relative to the term magnitudes."""
    res = CaseResult("remark_identity", tolerance=tol, reference="remark after the curvature formulas")
    presets = [sasaki(), cheeger_gromoll()]
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        W = presets[idx] if idx < len(presets) else random_weights(rng)
        t = float(rng.uniform(0.0, 10.0))
        k = cf.abc(W, t)
        w = W(t)
        lhs = k.A * w.alpha - k.B * w.beta
        rhs = k.C * (w.alpha + t * w.beta)
        scale = max(abs(k.A * w.alpha), abs(k.B * w.beta), abs(rhs), 1.0)
        res.samples += 1
        err = abs(lhs - rhs) / scale
        res.max_abs_err = max(res.max_abs_err, abs(lhs - rhs))
        if err >= res.max_rel_err:
            res.max_rel_err = err
            res.worst_sample = idx
            res.worst_point = {"t": t, "weights": W.to_json()}
        res.passed = res.max_rel_err < tol
    return res


def sectional_consistency(W: WeightFunctions, g: MetricField, samples: int = 100, seed: int = 0,
                          tol: float = 1e-8) -> dict:
    """Printed sectional values vs the general-plane sectional curvature."""
    n = g.dim
    out = {
        name: CaseResult(name, tolerance=tol, reference=f"sectional corollary, {label}")
        for name, label in [
            ("sectional_hh", "K(X^h, Y^h)"),
            ("sectional_hv", "K(X^h, Y^{v,i})"),
            ("sectional_vv", "K(X^{v,i}, Y^{v,i})"),
            ("sectional_vv_cross", "K(X^{v,i}, Y^{v,j}) = 0"),
        ]
    }
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        p = _sample_point(rng, n)
        geo = cf.PointGeometry(W, g, p)
        X, Y = orthonormal_pair(rng, geo.gx)
        tab = cf.sectional_table(W, g, p, X, Y, geo=geo)
        i, j = _pair_indices(rng, n)
        H = LMTangent.horizontal
        V = LMTangent.vertical
        K = lambda A, B: cf.sectional(W, g, p, A, B, geo=geo)  # noqa: E731
        out["sectional_hh"].add(idx, p, np.array([tab.hh]), np.array([K(H(X), H(Y))]))
        out["sectional_hv"].add(idx, p, np.array([tab.hv[i]]), np.array([K(H(X), V(Y, i))]))
        out["sectional_vv"].add(idx, p, np.array([tab.vv[i]]), np.array([K(V(X, i), V(Y, i))]))
        out["sectional_vv_cross"].add(idx, p, np.array([tab.vv_cross]), np.array([K(V(X, i), V(Y, j))]))
    return out
