"""Closed-form Levi-Civita connection and curvature of (L(M), gbar).

Everything is evaluated pointwise on lifts of base vectors. ``U^i`` denotes
the vertical lift of ``u_i`` into the i-th vertical subbundle. Weights are
evaluated at ``t_i = |u_i|^2`` (base metric norm).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Union

import numpy as np

from .base_manifold import (
    MetricField,
    christoffel,
    curvature_apply,
    nabla_curvature_apply,
    nabla_riemann,
    riemann,
    scalar_base,
    sectional_base,
)
from .errors import DegeneratePlane, IndexOutOfRange, NotOrthonormal, WeightDomainError
from .frame_bundle import HORIZONTAL, AffineField, FramePoint, LMTangent, covariant_derivative
from .metrics import WeightFunctions, WeightValues, natural_gram, orthonormal_basis, weights_eval


class ABCCoefficients(NamedTuple):
    A: float
    B: float
    C: float
    t: float


def abc(W: WeightFunctions, t: float) -> ABCCoefficients:
    """Coefficients of the purely vertical curvature case at ``t``."""
    a, b, da, d2a, db = weights_eval(W, t)
    _check_weights(a, b, t)
    s = a + t * b
    A = (3 * da ** 2 - 2 * a * d2a) / a ** 2 + (a * db - 2 * da * b) * (a + t * da) / (a ** 2 * s)
    B = (a * b - 2 * a * da - da ** 2 * t) / (a * s)
    C = -2 * d2a / s + (
        3 * a * da ** 2 + 2 * da ** 2 * b * t + a ** 2 * db - a * b ** 2 + a * da * db * t
    ) / (a * s ** 2)
    return ABCCoefficients(A, B, C, t)


def remark_residual(W: WeightFunctions, t: float) -> float:
    """``A alpha - B beta - C (alpha + t beta)``, zero when the pair symmetry holds."""
    k = abc(W, t)
    w = weights_eval(W, t)
    return k.A * w.alpha - k.B * w.beta - k.C * (w.alpha + t * w.beta)


def _check_weights(a, b, t):
    if not (a > 0 and a + t * b > 0):
        raise WeightDomainError(
            f"need alpha > 0 and alpha + t beta > 0 at t={t:g} (alpha={a:g}, beta={b:g})"
        )


@dataclass(frozen=True)
class LiftedField:
    """Lift of a base vector field; ``kind`` is ``"h"`` or a vertical index."""

    field: AffineField
    kind: Union[str, int]

    @classmethod
    def of(cls, value, kind, x0=None) -> "LiftedField":
        if isinstance(value, AffineField):
            return cls(value, kind)
        return cls(AffineField.constant(value, x0), kind)


class PointGeometry:
    """Base-manifold data at ``p`` shared by all closed-form evaluations."""

    def __init__(self, W: WeightFunctions, g: MetricField, p: FramePoint):
        self.W, self.g, self.p = W, g, p
        self.n = p.n
        self.x = p.x
        self.gx = g.eval(p.x)
        self.t = np.einsum("ji,jk,ki->i", p.u, self.gx, p.u)
        self.w = [weights_eval(W, ti) for ti in self.t]
        for wi, ti in zip(self.w, self.t):
            _check_weights(wi.alpha, wi.beta, ti)

    @cached_property
    def gam(self):
        return christoffel(self.g, self.x)

    @cached_property
    def rm(self):
        return riemann(self.g, self.x)

    @cached_property
    def nr(self):
        return nabla_riemann(self.g, self.x)

    @cached_property
    def abc(self):
        return [abc(self.W, ti) for ti in self.t]

    def u(self, i):
        return self.p.u[:, i]

    def ip(self, X, Y) -> float:
        return float(X @ self.gx @ Y)

    def R(self, X, Y, Z):
        return curvature_apply(self.rm, X, Y, Z)

    def DR(self, V, X, Y, Z):
        return nabla_curvature_apply(self.nr, V, X, Y, Z)

    def denom(self, i) -> float:
        return self.w[i].alpha + self.t[i] * self.w[i].beta


def _geometry(W, g, p, geo) -> PointGeometry:
    if geo is not None:
        return geo
    return PointGeometry(W, g, p)


def _kind(k, n):
    if k == HORIZONTAL:
        return HORIZONTAL
    if not isinstance(k, (int, np.integer)) or not 0 <= k < n:
        raise IndexOutOfRange(f"vertical index {k!r} not in 0..{n - 1}")
    return int(k)


def _h(X):
    return LMTangent.horizontal(X)


def _v(X, i):
    return LMTangent.vertical(X, i)


# -- connection ----------------------------------------------------------------


def connection(W: WeightFunctions, g: MetricField, p: FramePoint,
               X: LiftedField, Y: LiftedField, geo: Optional[PointGeometry] = None) -> LMTangent:
    """``nabla-bar_X Y`` for lifted fields."""
    G = _geometry(W, g, p, geo)
    n = G.n
    kx, ky = _kind(X.kind, n), _kind(Y.kind, n)
    Xv, Yv = X.field(G.x), Y.field(G.x)
    if kx == HORIZONTAL and ky == HORIZONTAL:
        v = np.stack([-0.5 * G.R(Xv, Yv, G.u(i)) for i in range(n)])
        return LMTangent(covariant_derivative(g, G.x, Xv, Y.field, G.gam), v)
    if kx == HORIZONTAL:
        i = ky
        out = _h(0.5 * G.w[i].alpha * G.R(G.u(i), Yv, Xv))
        return out + _v(covariant_derivative(g, G.x, Xv, Y.field, G.gam), i)
    if ky == HORIZONTAL:
        i = kx
        return _h(0.5 * G.w[i].alpha * G.R(G.u(i), Xv, Yv))
    if kx != ky:
        return LMTangent.zero(n)
    i = kx
    a, b, da, _, db = G.w[i]
    ui, t = G.u(i), G.t[i]
    xu, yu = G.ip(Xv, ui), G.ip(Yv, ui)
    s = G.denom(i)
    coef_u = (db * a - 2 * da * b) / (a * s) * xu * yu + (b - da) / s * G.ip(Xv, Yv)
    return _v((da / a) * (xu * Yv + yu * Xv) + coef_u * ui, i)


def nabla_U(W: WeightFunctions, g: MetricField, p: FramePoint, X: LiftedField, j: int,
            geo: Optional[PointGeometry] = None) -> LMTangent:
    """``nabla-bar_X U^j`` where ``U^j`` is the vertical lift of ``u_j``."""
    G = _geometry(W, g, p, geo)
    n = G.n
    kx, j = _kind(X.kind, n), _kind(j, n)
    if kx == HORIZONTAL or kx != j:
        return LMTangent.zero(n)
    i = kx
    a, b, da, _, db = G.w[i]
    t = G.t[i]
    Xv = X.field(G.x)
    c1 = (a + t * da) / a
    c2 = (t * (a * db - da * b) + a * b) / (a * G.denom(i)) * G.ip(Xv, G.u(i))
    return _v(c1 * Xv + c2 * G.u(i), i)


# -- curvature -------------------------------------------------------------------

CURVATURE_CASES = (
    "hhh",      # R(X^h, Y^h) Z^h
    "hhv",      # R(X^h, Y^h) Z^{v,i}
    "hvh",      # R(X^h, Y^{v,i}) Z^h
    "hvv_ij",   # R(X^h, Y^{v,i}) Z^{v,j}, i != j
    "hvv_ii",   # R(X^h, Y^{v,i}) Z^{v,i}
    "vvh_ii",   # R(X^{v,i}, Y^{v,i}) Z^h
    "vvh_ij",   # R(X^{v,i}, Y^{v,j}) Z^h, i != j
    "vvv_iii",  # R(X^{v,i}, Y^{v,i}) Z^{v,i}
    "vvv_mixed",  # R(X^{v,i}, Y^{v,j}) Z^{v,k}, not all equal
)


def classify(kx, ky, kz) -> Optional[str]:
    """Printed case label for a kind triple, or None if it needs antisymmetry."""
    H = HORIZONTAL
    if kx == H and ky == H:
        return "hhh" if kz == H else "hhv"
    if kx == H:
        if kz == H:
            return "hvh"
        return "hvv_ii" if ky == kz else "hvv_ij"
    if ky == H:
        return None
    if kz == H:
        return "vvh_ii" if kx == ky else "vvh_ij"
    return "vvv_iii" if kx == ky == kz else "vvv_mixed"


def _curv_hhh(G, X, Y, Z):
    n = G.n
    v = np.stack([0.5 * G.DR(Z, X, Y, G.u(i)) for i in range(n)])
    h = G.R(X, Y, Z)
    for i in range(n):
        ui, a = G.u(i), G.w[i].alpha
        h = h - 0.25 * a * (
            G.R(ui, G.R(Y, Z, ui), X)
            - G.R(ui, G.R(X, Z, ui), Y)
            - 2.0 * G.R(ui, G.R(X, Y, ui), Z)
        )
    return LMTangent(h, v)


def _curv_hhv(G, X, Y, Z, i):
    n = G.n
    ui = G.u(i)
    a, b, da, _, _ = G.w[i]
    out = _v(G.R(X, Y, Z), i)
    out = out + _h(0.5 * a * (G.DR(X, ui, Z, Y) - G.DR(Y, ui, Z, X)))
    v = np.stack([
        -0.25 * a * (G.R(X, G.R(ui, Z, Y), G.u(j)) - G.R(Y, G.R(ui, Z, X), G.u(j)))
        for j in range(n)
    ])
    out = out + LMTangent(np.zeros(n), v)
    out = out + _v((da / a) * G.ip(Z, ui) * G.R(X, Y, ui), i)
    out = out - _v((b - da) / G.denom(i) * G.ip(G.R(X, Y, Z), ui) * ui, i)
    return out


def _curv_hvh(G, X, Y, Z, i):
    n = G.n
    ui = G.u(i)
    a, b, da, _, _ = G.w[i]
    out = _h(0.5 * a * G.DR(X, ui, Y, Z))
    out = out - _v(0.5 * G.R(Z, X, Y), i)
    out = out + _v(da / (2 * a) * G.ip(Y, ui) * G.R(X, Z, ui), i)
    v = np.stack([-0.25 * a * G.R(X, G.R(ui, Y, Z), G.u(j)) for j in range(n)])
    out = out + LMTangent(np.zeros(n), v)
    out = out - _v((b - da) / (2 * G.denom(i)) * G.ip(G.R(X, Z, Y), ui) * ui, i)
    return out


def _curv_hvv_ij(G, X, Y, Z, i, j):
    ai, aj = G.w[i].alpha, G.w[j].alpha
    return _h(-0.25 * ai * aj * G.R(G.u(i), Y, G.R(G.u(j), Z, X)))


def _curv_hvv_ii(G, X, Y, Z, i):
    ui = G.u(i)
    a, _, da, _, _ = G.w[i]
    h = 0.5 * da * (G.ip(Z, ui) * G.R(ui, Y, X) - G.ip(Y, ui) * G.R(ui, Z, X))
    h = h - 0.25 * a ** 2 * G.R(ui, Y, G.R(ui, Z, X)) - 0.5 * a * G.R(Y, Z, X)
    return _h(h)


def _curv_vvh_ii(G, X, Y, Z, i):
    ui = G.u(i)
    a, _, da, _, _ = G.w[i]
    h = a * G.R(X, Y, Z)
    h = h + 0.25 * a ** 2 * (G.R(ui, X, G.R(ui, Y, Z)) - G.R(ui, Y, G.R(ui, X, Z)))
    h = h + da * (G.ip(X, ui) * G.R(ui, Y, Z) - G.ip(Y, ui) * G.R(ui, X, Z))
    return _h(h)


def _curv_vvh_ij(G, X, Y, Z, i, j):
    ui, uj = G.u(i), G.u(j)
    ai, aj = G.w[i].alpha, G.w[j].alpha
    return _h(0.25 * ai * aj * (G.R(ui, X, G.R(uj, Y, Z)) - G.R(uj, Y, G.R(ui, X, Z))))


def _curv_vvv_iii(G, X, Y, Z, i):
    ui = G.u(i)
    A, B, C, _ = G.abc[i]
    xu, yu, zu = G.ip(X, ui), G.ip(Y, ui), G.ip(Z, ui)
    vec = C * (xu * G.ip(Y, Z) - yu * G.ip(X, Z)) * ui
    vec = vec + (A * yu * zu + B * G.ip(Y, Z)) * X
    vec = vec - (A * xu * zu + B * G.ip(X, Z)) * Y
    return _v(vec, i)


def curvature_lifts(W: WeightFunctions, g: MetricField, p: FramePoint,
                    X, kx, Y, ky, Z, kz, geo: Optional[PointGeometry] = None) -> LMTangent:
    """``R-bar(X^{kx}, Y^{ky}) Z^{kz}`` for base vectors X, Y, Z at ``p``."""
    G = _geometry(W, g, p, geo)
    n = G.n
    kx, ky, kz = _kind(kx, n), _kind(ky, n), _kind(kz, n)
    X, Y, Z = (np.asarray(V, dtype=float) for V in (X, Y, Z))
    case = classify(kx, ky, kz)
    if case is None:  # (v, h, .) -> -(h, v, .)
        return -curvature_lifts(W, g, p, Y, ky, X, kx, Z, kz, geo=G)
    if case == "hhh":
        return _curv_hhh(G, X, Y, Z)
    if case == "hhv":
        return _curv_hhv(G, X, Y, Z, kz)
    if case == "hvh":
        return _curv_hvh(G, X, Y, Z, ky)
    if case == "hvv_ij":
        return _curv_hvv_ij(G, X, Y, Z, ky, kz)
    if case == "hvv_ii":
        return _curv_hvv_ii(G, X, Y, Z, ky)
    if case == "vvh_ii":
        return _curv_vvh_ii(G, X, Y, Z, kx)
    if case == "vvh_ij":
        return _curv_vvh_ij(G, X, Y, Z, kx, ky)
    if case == "vvv_iii":
        return _curv_vvv_iii(G, X, Y, Z, kx)
    return LMTangent.zero(n)


def _components(A: LMTangent):
    """Nonzero (vector, kind) pieces of a split tangent vector."""
    out = []
    if np.any(A.h):
        out.append((A.h, HORIZONTAL))
    for i in range(A.n):
        if np.any(A.v[i]):
            out.append((A.v[i], i))
    return out


def curvature(W: WeightFunctions, g: MetricField, p: FramePoint, X, Y, Z,
              geo: Optional[PointGeometry] = None) -> LMTangent:
    """``R-bar(X, Y) Z``.

    Arguments are :class:`LiftedField` (pure lifts) or :class:`LMTangent`
    (general tangent vectors, expanded multilinearly over their lift parts).
    """
    G = _geometry(W, g, p, geo)
    parts = []
    for V in (X, Y, Z):
        if isinstance(V, LiftedField):
            parts.append([(V.field(G.x), V.kind)])
        else:
            parts.append(_components(V))

    def expand(first, second):
        out = LMTangent.zero(G.n)
        for Xv, kx in first:
            for Yv, ky in second:
                for Zv, kz in parts[2]:
                    out = out + curvature_lifts(W, g, p, Xv, kx, Yv, ky, Zv, kz, geo=G)
        return out.flat()

    # fl(a - b) == -fl(b - a), so swapping X and Y flips the sign bit-for-bit
    diff = 0.5 * (expand(parts[0], parts[1]) - expand(parts[1], parts[0]))
    return LMTangent.from_flat(diff)


def curvature_matrix(W, g, p, geo: Optional[PointGeometry] = None) -> np.ndarray:
    """``Rb[a, b, c, :]`` = lifted components of ``R-bar(e_a, e_b) e_c``.

    ``e_*`` runs over the coordinate-lifted basis ``(d_a^h, d_j^{v,i})``.
    """
    G = _geometry(W, g, p, geo)
    n = G.n
    basis = [(np.eye(n)[a], HORIZONTAL) for a in range(n)]
    basis += [(np.eye(n)[j], i) for i in range(n) for j in range(n)]
    N = len(basis)
    out = np.zeros((N, N, N, N))
    for a in range(N):
        for b in range(a + 1, N):
            for c in range(N):
                val = curvature_lifts(W, g, p, *basis[a], *basis[b], *basis[c], geo=G).flat()
                out[a, b, c] = val
                out[b, a, c] = -val
    return out


# -- sectional and scalar curvature ------------------------------------------------


def _gbar(G: PointGeometry, A: LMTangent, B: LMTangent) -> float:
    val = A.h @ G.gx @ B.h
    for i, w in enumerate(G.w):
        gu = G.gx @ G.u(i)
        val += w.alpha * (A.v[i] @ G.gx @ B.v[i]) + w.beta * (A.v[i] @ gu) * (B.v[i] @ gu)
    return float(val)


def sectional(W: WeightFunctions, g: MetricField, p: FramePoint, A: LMTangent, B: LMTangent,
              geo: Optional[PointGeometry] = None) -> float:
    """Sectional curvature of ``span(A, B)`` for the closed-form curvature."""
    G = _geometry(W, g, p, geo)
    area = _gbar(G, A, A) * _gbar(G, B, B) - _gbar(G, A, B) ** 2
    if area <= 1e-12:
        raise DegeneratePlane(f"plane is degenerate (Gram determinant {area:.3e})")
    return _gbar(G, curvature(W, g, p, A, B, B, geo=G), A) / area


@dataclass
class SectionalTable:
    """Printed sectional-curvature values for an orthonormal pair ``X, Y``.

    ``hv[i]`` is ``K(X^h, Y^{v,i})`` and ``vv[i]`` is ``K(X^{v,i}, Y^{v,i})``;
    ``vv_cross`` is the (identically zero) value for distinct indices.
    """

    hh: float
    hv: list
    vv: list
    vv_cross: float = 0.0
    kappa: Optional[float] = None
    hh_space_form: Optional[float] = None
    hv_space_form: Optional[list] = None
    hv_space_form_printed: Optional[list] = None
    positivity_sum: Optional[float] = None
    positivity_hypothesis: Optional[bool] = None

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def sectional_table(W: WeightFunctions, g: MetricField, p: FramePoint, X, Y,
                    geo: Optional[PointGeometry] = None, tol: float = 1e-8) -> SectionalTable:
    G = _geometry(W, g, p, geo)
    X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
    gram = np.array([[G.ip(X, X), G.ip(X, Y)], [G.ip(Y, X), G.ip(Y, Y)]])
    if np.max(np.abs(gram - np.eye(2))) > tol:
        raise NotOrthonormal(f"X, Y not orthonormal in g (Gram {gram.tolist()})")
    n = G.n
    K = sectional_base(g, G.x, X, Y)
    hh = K - 0.75 * sum(
        G.w[i].alpha * G.ip(G.R(X, Y, G.u(i)), G.R(X, Y, G.u(i))) for i in range(n)
    )
    hv, vv = [], []
    for i in range(n):
        ui = G.u(i)
        a, b = G.w[i].alpha, G.w[i].beta
        r = G.R(ui, Y, X)
        hv.append(float(a ** 2 * G.ip(r, r) / (4 * (a + b * G.ip(Y, ui) ** 2))))
        A_, B_, _, _ = G.abc[i]
        s = G.ip(X, ui) ** 2 + G.ip(Y, ui) ** 2
        vv.append(float((A_ * s + B_) / (a + b * s)))
    table = SectionalTable(hh=float(hh), hv=hv, vv=vv)
    if g.kappa is not None:
        k = g.kappa
        table.kappa = k
        proj = [(G.ip(X, G.u(i)), G.ip(Y, G.u(i))) for i in range(n)]
        table.hh_space_form = k - 0.75 * k ** 2 * sum(
            G.w[i].alpha * (xu ** 2 + yu ** 2) for i, (xu, yu) in enumerate(proj)
        )
        table.hv_space_form = [
            k ** 2 * G.w[i].alpha ** 2 * xu ** 2 / (4 * (G.w[i].alpha + G.w[i].beta * yu ** 2))
            for i, (xu, yu) in enumerate(proj)
        ]
        # as printed: beta_i g(Y, u_i) without the square
        table.hv_space_form_printed = [
            k ** 2 * G.w[i].alpha ** 2 * xu ** 2 / (4 * (G.w[i].alpha + G.w[i].beta * yu))
            for i, (xu, yu) in enumerate(proj)
        ]
        table.positivity_sum = float(sum(G.w[i].alpha * G.t[i] for i in range(n)))
        table.positivity_hypothesis = bool(k > 0 and table.positivity_sum < 4.0 / (3.0 * k))
    return table


def cheeger_gromoll_vv(t: float, s: float) -> float:
    """Vertical sectional curvature for Cheeger-Gromoll weights.

    ``s = g(X, u_i)^2 + g(Y, u_i)^2`` for an orthonormal pair ``X, Y``.
    """
    return (-t * s + t ** 2 + 3 * t + 3) / ((1 + t) ** 2 * (1 + s))


def _vertical_scalar_printed(n, w: WeightValues, k: ABCCoefficients) -> float:
    a, b = w.alpha, w.beta
    A_, B_, C_, t = k
    s = a + t * b
    return (
        n * (n - 1) * B_ / a
        + 2 * (n * A_ * a - B_ * b) / a ** 2 * t
        + (n + 3) * C_ * b / a ** 2 * t ** 2
        + (n - 1) * b * (B_ * (2 * a + b) + A_ * a) / (a ** 2 * s)
        + 2 * C_ * b ** 2 / (a ** 2 * s) * t ** 3
    )


def _vertical_scalar(n, w: WeightValues, k: ABCCoefficients) -> float:
    """Scalar curvature of one vertical copy ``alpha g + beta u u^T`` at ``u``.

    Trace of the (v,v,v) curvature: ``Ric = (C t + (n-1) B) g + ((n-1) A - C) u u``
    contracted with the inverse ``g/alpha - beta u u / (alpha (alpha + t beta))``.
    """
    a, b = w.alpha, w.beta
    A_, B_, C_, t = k
    s = a + t * b
    return (C_ * t + (n - 1) * B_) * (n / a - b * t / (a * s)) + ((n - 1) * A_ - C_) * t / s


def scalar(W: WeightFunctions, g: MetricField, p: FramePoint,
           geo: Optional[PointGeometry] = None, basis=None, printed: bool = False) -> float:
    """Scalar curvature of ``gbar`` at ``p``.

    ``s - 1/4 sum_{i,j,k} alpha_k |R(e_i, e_j) u_k|^2`` plus one vertical term
    per frame vector. ``printed=True`` swaps in the six-term vertical
    expression as printed, which disagrees with the curvature trace
    whenever ``alpha`` or ``beta`` is non-constant (kept for auditing).
    ``basis`` (columns, g-orthonormal) defaults to Gram-Schmidt on the axes.
    """
    G = _geometry(W, g, p, geo)
    n = G.n
    E = orthonormal_basis(G.gx) if basis is None else np.asarray(basis, dtype=float)
    total = scalar_base(g, G.x)
    for k in range(n):
        uk = G.u(k)
        for i in range(n):
            for j in range(n):
                r = G.R(E[:, i], E[:, j], uk)
                total -= 0.25 * G.w[k].alpha * G.ip(r, r)
    vertical = _vertical_scalar_printed if printed else _vertical_scalar
    for k in range(n):
        total += vertical(n, G.w[k], G.abc[k])
    return float(total)


def scalar_trace(W: WeightFunctions, g: MetricField, p: FramePoint,
                 geo: Optional[PointGeometry] = None) -> float:
    """Scalar curvature as the metric trace of the closed-form curvature tensor."""
    G = _geometry(W, g, p, geo)
    Rb = curvature_matrix(W, g, p, geo=G)
    gram = natural_gram(W, g, p)
    ginv = np.linalg.inv(gram)
    # Ric(b, c) = sum_a Rb[a, b, c, a]
    ric = np.einsum("abca->bc", Rb)
    return float(np.einsum("bc,bc->", ginv, ric))


def proof_identity(g: MetricField, p: FramePoint, k: int, basis=None) -> tuple:
    """Both sides of ``sum |R(e_i, e_j) u_k|^2 = sum |R(u_k, e_j) e_i|^2``."""
    gx = g.eval(p.x)
    rm = riemann(g, p.x)
    E = orthonormal_basis(gx) if basis is None else np.asarray(basis, dtype=float)
    uk = p.u[:, k]
    n = p.n
    lhs = rhs = 0.0
    for i in range(n):
        for j in range(n):
            r1 = curvature_apply(rm, E[:, i], E[:, j], uk)
            r2 = curvature_apply(rm, uk, E[:, j], E[:, i])
            lhs += r1 @ gx @ r1
            rhs += r2 @ gx @ r2
    return float(lhs), float(rhs)
