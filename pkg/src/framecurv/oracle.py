"""Brute-force geometry of (L(M), gbar) in the chart ``(x, u_1, ..., u_n)``.

The chart metric is differentiated numerically (central differences,
Richardson-extrapolated for curvature), and Christoffel symbols and the
curvature tensor are assembled from the coordinate Koszul formula. Nothing
here uses the closed-form connection or curvature; the comparison helpers
at the bottom pit the two against each other.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import closed_form as cf
from . import kernels
from .base_manifold import MetricField, christoffel
from .errors import SingularMetric
from .frame_bundle import (
    HORIZONTAL,
    AffineField,
    FramePoint,
    LMTangent,
    decompose_matrix,
    lifted_field_chart,
    random_frame,
    random_point,
    recompose,
)
from .metrics import WeightFunctions, natural_chart_metric

H_FIRST = 1e-4
H_SECOND = 5e-3

CONNECTION_CASES = ("hh", "hv_i", "vh_i", "vv_ij", "vv_ii")

REFERENCES = {
    "hh": "connection, case (X^h, Y^h)",
    "hv_i": "connection, case (X^h, Y^{v,i})",
    "vh_i": "connection, case (X^{v,i}, Y^h)",
    "vv_ij": "connection, case (X^{v,i}, Y^{v,j}), i != j",
    "vv_ii": "connection, case (X^{v,i}, Y^{v,i})",
    "hhh": "curvature, R(X^h, Y^h) Z^h",
    "hhv": "curvature, R(X^h, Y^h) Z^{v,i}",
    "hvh": "curvature, R(X^h, Y^{v,i}) Z^h",
    "hvv_ij": "curvature, R(X^h, Y^{v,i}) Z^{v,j}",
    "hvv_ii": "curvature, R(X^h, Y^{v,i}) Z^{v,i}",
    "vvh_ii": "curvature, R(X^{v,i}, Y^{v,i}) Z^h",
    "vvh_ij": "curvature, R(X^{v,i}, Y^{v,j}) Z^h",
    "vvv_iii": "curvature, R(X^{v,i}, Y^{v,i}) Z^{v,i} (A_i, B_i, C_i)",
    "vvv_mixed": "curvature, R(X^{v,i}, Y^{v,j}) Z^{v,k}, indices not all equal",
    "scalar": "scalar curvature corollary",
    "sectional_hv": "sectional corollary, K(X^h, Y^{v,i})",
}


# -- chart metric and its derivatives ---------------------------------------------


class ChartMetric:
    """``q -> gbar_AB(q)`` for the natural metric in the induced chart."""

    def __init__(self, W: WeightFunctions, g: MetricField):
        self.W, self.g = W, g
        self.n = g.dim
        self.N = self.n + self.n ** 2

    def __call__(self, q) -> np.ndarray:
        p = FramePoint.from_chart(q)
        return natural_chart_metric(self.W, self.g, p)


def chart_metric(W: WeightFunctions, g: MetricField) -> ChartMetric:
    return ChartMetric(W, g)


def _first(m: Callable, q, h):
    N = q.size
    out = []
    for A in range(N):
        e = np.zeros(N)
        e[A] = h
        out.append((m(q + e) - m(q - e)) / (2 * h))
    return np.stack(out)


def _second(m: Callable, q, h, m0=None):
    N = q.size
    m0 = m(q) if m0 is None else m0
    eye = np.eye(N) * h
    plus = [m(q + eye[A]) for A in range(N)]
    minus = [m(q - eye[A]) for A in range(N)]
    d1 = np.stack([(plus[A] - minus[A]) / (2 * h) for A in range(N)])
    d2 = np.empty((N, N) + m0.shape)
    for A in range(N):
        d2[A, A] = (plus[A] - 2 * m0 + minus[A]) / h ** 2
        for B in range(A + 1, N):
            val = (
                m(q + eye[A] + eye[B]) - m(q + eye[A] - eye[B])
                - m(q - eye[A] + eye[B]) + m(q - eye[A] - eye[B])
            ) / (4 * h ** 2)
            d2[A, B] = d2[B, A] = val
    return d1, d2


def chart_derivatives(m: Callable, q, h: float = H_SECOND, richardson: bool = True):
    """``(gbar, d gbar, d^2 gbar)``; Richardson combines steps h and h/2."""
    q = np.asarray(q, dtype=float)
    m0 = m(q)
    d1, d2 = _second(m, q, h, m0)
    if richardson:
        d1h, d2h = _second(m, q, h / 2, m0)
        d1 = (4 * d1h - d1) / 3
        d2 = (4 * d2h - d2) / 3
    return m0, d1, d2


def _inv(mat):
    try:
        return np.linalg.inv(mat)
    except np.linalg.LinAlgError as exc:
        raise SingularMetric(str(exc)) from exc


def fd_christoffel(m: Callable, q, h: float = H_FIRST) -> np.ndarray:
    """``gam[C, A, B]`` from central differences of the chart metric."""
    q = np.asarray(q, dtype=float)
    return kernels.christoffel_from_derivs(_inv(m(q)), _first(m, q, h))


def fd_riemann(m: Callable, q, h: float = H_SECOND, richardson: bool = True) -> np.ndarray:
    """``rm[A, B, C, D]``: component D of ``R(d_A, d_B) d_C`` in the chart."""
    m0, d1, d2 = chart_derivatives(m, q, h, richardson)
    _, _, rm = kernels.curvature_from_derivs(_inv(m0), d1, d2)
    return rm


def fd_scalar(m: Callable, q, h: float = H_SECOND) -> float:
    m0, d1, d2 = chart_derivatives(m, q, h)
    ginv = _inv(m0)
    _, _, rm = kernels.curvature_from_derivs(ginv, d1, d2)
    return float(np.einsum("bc,abca->", ginv, rm))


def convergence_ratio(m: Callable, q, h: float = 1e-2) -> float:
    """Self-convergence ``|G(h) - G(h/2)| / |G(h/2) - G(h/4)|`` of fd_christoffel.

    About 4 for a second-order scheme in its asymptotic range.
    """
    g1, g2, g4 = (fd_christoffel(m, q, s) for s in (h, h / 2, h / 4))
    return float(np.linalg.norm(g1 - g2) / np.linalg.norm(g2 - g4))


def error_ratio(m: Callable, q, exact: np.ndarray, h: float = 1e-2) -> float:
    """``|G(h) - exact| / |G(h/2) - exact|`` for fd_christoffel."""
    e1 = np.linalg.norm(fd_christoffel(m, q, h) - exact)
    e2 = np.linalg.norm(fd_christoffel(m, q, h / 2) - exact)
    return float(e1 / e2)


def oracle_connection(W: WeightFunctions, g: MetricField, p: FramePoint,
                      X: cf.LiftedField, Y: cf.LiftedField, h: float = H_FIRST,
                      gam_bar: Optional[np.ndarray] = None) -> LMTangent:
    """``nabla-bar_X Y`` by Koszul Christoffels plus the derivative of Y's chart field."""
    m = ChartMetric(W, g)
    q = p.chart()
    if gam_bar is None:
        gam_bar = fd_christoffel(m, q, h)
    Xf = lifted_field_chart(X.field, X.kind, g)
    Yf = lifted_field_chart(Y.field, Y.kind, g)
    V, Wq = Xf(q), Yf(q)
    dW = (Yf(q + h * V) - Yf(q - h * V)) / (2 * h)
    res = dW + np.einsum("cab,a,b->c", gam_bar, V, Wq)
    return LMTangent.from_flat(decompose_matrix(p, g) @ res)


def oracle_curvature(W: WeightFunctions, g: MetricField, p: FramePoint,
                     A: LMTangent, B: LMTangent, C: LMTangent,
                     rm_bar: Optional[np.ndarray] = None) -> LMTangent:
    if rm_bar is None:
        rm_bar = fd_riemann(ChartMetric(W, g), p.chart())
    gam = christoffel(g, p.x)
    a, b, c = (recompose(T, p, g, gam).flat() for T in (A, B, C))
    res = np.einsum("ABCD,A,B,C->D", rm_bar, a, b, c)
    return LMTangent.from_flat(decompose_matrix(p, g, gam) @ res)


# -- comparison reports ------------------------------------------------------------


def _rel_err(closed: np.ndarray, ref: np.ndarray) -> tuple:
    """Absolute and relative error; the relative one uses a unit floor."""
    diff = float(np.linalg.norm(closed - ref))
    return diff, diff / max(float(np.linalg.norm(ref)), 1.0)


@dataclass
class CaseResult:
    case: str
    samples: int = 0
    max_abs_err: float = 0.0
    max_rel_err: float = 0.0
    worst_sample: Optional[int] = None
    worst_point: Optional[dict] = None
    tolerance: float = 0.0
    passed: bool = True
    reference: str = ""
    notes: list = field(default_factory=list)

    def add(self, idx: int, p: FramePoint, closed, ref) -> None:
        abs_err, rel_err = _rel_err(np.asarray(closed), np.asarray(ref))
        self.samples += 1
        self.max_abs_err = max(self.max_abs_err, abs_err)
        if rel_err >= self.max_rel_err:
            self.max_rel_err = rel_err
            self.worst_sample = idx
            self.worst_point = p.to_json()
        self.passed = self.max_rel_err < self.tolerance

    def merge(self, other: "CaseResult") -> "CaseResult":
        out = CaseResult(self.case, tolerance=self.tolerance, reference=self.reference,
                         notes=list(self.notes))
        out.samples = self.samples + other.samples
        out.max_abs_err = max(self.max_abs_err, other.max_abs_err)
        best = self if self.max_rel_err >= other.max_rel_err else other
        out.max_rel_err = best.max_rel_err
        out.worst_sample, out.worst_point = best.worst_sample, best.worst_point
        out.passed = out.max_rel_err < out.tolerance
        return out


@dataclass
class ComparisonReport:
    kind: str
    base: str
    weights: str
    n: int
    seed: int
    cases: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases.values())

    def case(self, name: str, tolerance: float) -> CaseResult:
        if name not in self.cases:
            self.cases[name] = CaseResult(name, tolerance=tolerance, reference=REFERENCES.get(name, ""))
        return self.cases[name]

    def finalize(self) -> "ComparisonReport":
        self.discrepancies = [
            {"case": c.case, "reference": c.reference, "max_rel_err": c.max_rel_err,
             "tolerance": c.tolerance}
            for c in self.cases.values() if not c.passed
        ]
        return self

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["cases"] = {k: asdict(v) for k, v in sorted(self.cases.items())}
        return d


def _sample_rng(seed: int, idx: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(idx)])


def _random_affine(rng, x0, n) -> AffineField:
    return AffineField(x0, rng.uniform(-1, 1, n), rng.uniform(-1, 1, (n, n)))


def _sample_point(rng, n) -> FramePoint:
    return FramePoint(random_point(rng, n), random_frame(rng, n))


def _pair_indices(rng, n):
    i = int(rng.integers(n))
    j = int((i + 1 + rng.integers(n - 1)) % n) if n > 1 else i
    return i, j


def compare_connection(W: WeightFunctions, g: MetricField, samples: int = 100, seed: int = 0,
                       tol: float = 1e-5, h: float = H_FIRST) -> ComparisonReport:
    n = g.dim
    rep = ComparisonReport("connection", g.name, W.preset, n, seed)
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        p = _sample_point(rng, n)
        X = _random_affine(rng, p.x, n)
        Y = _random_affine(rng, p.x, n)
        i, j = _pair_indices(rng, n)
        gam_bar = fd_christoffel(ChartMetric(W, g), p.chart(), h)
        geo = cf.PointGeometry(W, g, p)
        kinds = {
            "hh": (HORIZONTAL, HORIZONTAL),
            "hv_i": (HORIZONTAL, i),
            "vh_i": (i, HORIZONTAL),
            "vv_ij": (i, j),
            "vv_ii": (i, i),
        }
        for case, (kx, ky) in kinds.items():
            LX, LY = cf.LiftedField(X, kx), cf.LiftedField(Y, ky)
            closed = cf.connection(W, g, p, LX, LY, geo=geo).flat()
            ref = oracle_connection(W, g, p, LX, LY, h=h, gam_bar=gam_bar).flat()
            rep.case(case, tol).add(idx, p, closed, ref)
    return rep.finalize()


def curvature_case_kinds(rng, n):
    """One random kind triple per printed curvature case."""
    i, j = _pair_indices(rng, n)
    while True:
        trip = tuple(int(k) for k in rng.integers(n, size=3))
        if len(set(trip)) > 1:
            break
    H = HORIZONTAL
    return {
        "hhh": (H, H, H),
        "hhv": (H, H, i),
        "hvh": (H, i, H),
        "hvv_ij": (H, i, j),
        "hvv_ii": (H, i, i),
        "vvh_ii": (i, i, H),
        "vvh_ij": (i, j, H),
        "vvv_iii": (i, i, i),
        "vvv_mixed": trip,
    }


def compare_curvature(W: WeightFunctions, g: MetricField, samples: int = 50, seed: int = 0,
                      tol: float = 1e-3, h: float = H_SECOND,
                      scalar_samples: int = 0, scalar_tol: float = 1e-3) -> ComparisonReport:
    """Per-case closed form vs FD curvature; optionally the scalar curvature too."""
    n = g.dim
    rep = ComparisonReport("curvature", g.name, W.preset, n, seed)
    m = ChartMetric(W, g)
    for idx in range(max(samples, scalar_samples)):
        rng = _sample_rng(seed, idx)
        p = _sample_point(rng, n)
        geo = cf.PointGeometry(W, g, p)
        m0, d1, d2 = chart_derivatives(m, p.chart(), h)
        ginv = _inv(m0)
        _, _, rm_bar = kernels.curvature_from_derivs(ginv, d1, d2)
        if idx < samples:
            for case, (kx, ky, kz) in curvature_case_kinds(rng, n).items():
                X, Y, Z = rng.uniform(-1, 1, (3, n))
                closed = cf.curvature_lifts(W, g, p, X, kx, Y, ky, Z, kz, geo=geo)
                lift = lambda V, k: LMTangent.horizontal(V) if k == HORIZONTAL else LMTangent.vertical(V, k)  # noqa: E731
                ref = oracle_curvature(W, g, p, lift(X, kx), lift(Y, ky), lift(Z, kz), rm_bar=rm_bar)
                rep.case(case, tol).add(idx, p, closed.flat(), ref.flat())
        if idx < scalar_samples:
            s_ref = float(np.einsum("bc,abca->", ginv, rm_bar))
            rep.case("scalar", scalar_tol).add(idx, p, np.array([cf.scalar(W, g, p, geo=geo)]),
                                               np.array([s_ref]))
    return rep.finalize()


def compare_sectional_hv(W: WeightFunctions, g: MetricField, samples: int = 50, seed: int = 0,
                         tol: float = 1e-3) -> ComparisonReport:
    """Printed ``K(X^h, Y^{v,i})`` vs the oracle sectional curvature of that plane."""
    n = g.dim
    rep = ComparisonReport("sectional_hv", g.name, W.preset, n, seed)
    m = ChartMetric(W, g)
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        p = _sample_point(rng, n)
        geo = cf.PointGeometry(W, g, p)
        E = orthonormal_pair(rng, geo.gx)
        X, Y = E
        i = int(rng.integers(n))
        table = cf.sectional_table(W, g, p, X, Y, geo=geo)
        rm_bar = fd_riemann(m, p.chart())
        A, B = LMTangent.horizontal(X), LMTangent.vertical(Y, i)
        ref = oracle_sectional(W, g, p, A, B, rm_bar)
        rep.case("sectional_hv", tol).add(idx, p, np.array([table.hv[i]]), np.array([ref]))
    return rep.finalize()


def orthonormal_pair(rng, gx) -> tuple:
    """Random g-orthonormal pair via Gram-Schmidt on Gaussian vectors."""
    n = gx.shape[0]
    a, b = rng.normal(size=(2, n))
    a = a / math.sqrt(a @ gx @ a)
    b = b - (a @ gx @ b) * a
    b = b / math.sqrt(b @ gx @ b)
    return a, b


def oracle_sectional(W, g, p, A: LMTangent, B: LMTangent, rm_bar=None) -> float:
    m = ChartMetric(W, g)
    mat = m(p.chart())
    gam = christoffel(g, p.x)
    a, b = recompose(A, p, g, gam).flat(), recompose(B, p, g, gam).flat()
    if rm_bar is None:
        rm_bar = fd_riemann(m, p.chart())
    r = np.einsum("ABCD,A,B,C->D", rm_bar, a, b, b)
    area = (a @ mat @ a) * (b @ mat @ b) - (a @ mat @ b) ** 2
    return float(r @ mat @ a / area)
