"""Riemannian metrics on L(M) built from natural metrics on TM.

The diagonal natural family uses two weight functions ``alpha, beta`` of
``t = |u_i|^2``::

    gbar(X^h, Y^h)         = g(X, Y)
    gbar(X^h, Y^{v,i})     = 0
    gbar(X^{v,i}, Y^{v,j}) = 0                                  (i != j)
    gbar(X^{v,i}, Y^{v,i}) = alpha_i g(X, Y) + beta_i g(X, u_i) g(Y, u_i)

The general family couples the blocks with a symmetric positive definite
matrix ``Cbar = [[1, c], [c^T, C]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial

from . import kernels
from .base_manifold import MetricField, christoffel
from .errors import ConfigError, DomainError, InvalidSpec, NotSymmetric, WeightDomainError
from .frame_bundle import FramePoint, LMTangent

T_MAX = 100.0


class WeightValues(NamedTuple):
    alpha: float
    beta: float
    dalpha: float
    d2alpha: float
    dbeta: float


@dataclass(frozen=True)
class WeightFunctions:
    """Weights ``alpha(t), beta(t)`` with the derivatives the geometry needs."""

    alpha: Callable[[float], float]
    beta: Callable[[float], float]
    dalpha: Callable[[float], float]
    d2alpha: Callable[[float], float]
    dbeta: Callable[[float], float]
    preset: str = "custom_rational"
    params: Optional[dict] = None

    def __call__(self, t: float) -> WeightValues:
        return weights_eval(self, t)

    def validate(self, t_max: float = T_MAX, samples: int = 2001) -> None:
        """Check ``alpha > 0`` and ``alpha + t beta > 0`` on ``[0, t_max]``."""
        for t in np.linspace(0.0, t_max, samples):
            w = weights_eval(self, t)
            if not (w.alpha > 0 and w.alpha + t * w.beta > 0):
                raise WeightDomainError(
                    f"weights not admissible at t={t:g}: alpha={w.alpha:g}, "
                    f"alpha+t*beta={w.alpha + t * w.beta:g}"
                )

    def to_json(self) -> dict:
        if self.preset in ("sasaki", "cheeger_gromoll"):
            return {"preset": self.preset}
        return dict(self.params or {})


def weights_eval(W: WeightFunctions, t: float) -> WeightValues:
    t = float(t)
    if t < 0 or not np.isfinite(t):
        raise DomainError(f"weights are defined for t >= 0, got {t!r}")
    return WeightValues(
        float(W.alpha(t)), float(W.beta(t)), float(W.dalpha(t)),
        float(W.d2alpha(t)), float(W.dbeta(t)),
    )


def sasaki() -> WeightFunctions:
    one = lambda t: 1.0  # noqa: E731
    zero = lambda t: 0.0  # noqa: E731
    return WeightFunctions(one, zero, zero, zero, zero, preset="sasaki")


def cheeger_gromoll() -> WeightFunctions:
    return WeightFunctions(
        alpha=lambda t: 1.0 / (1.0 + t),
        beta=lambda t: 1.0 / (1.0 + t),
        dalpha=lambda t: -1.0 / (1.0 + t) ** 2,
        d2alpha=lambda t: 2.0 / (1.0 + t) ** 3,
        dbeta=lambda t: -1.0 / (1.0 + t) ** 2,
        preset="cheeger_gromoll",
    )


def _rational(num: Sequence[float], den: Sequence[float]):
    p, q = Polynomial(num), Polynomial(den)
    dp, dq = p.deriv(), q.deriv()
    d2p, d2q = p.deriv(2), q.deriv(2)

    def f(t):
        return p(t) / q(t)

    def df(t):
        return (dp(t) * q(t) - p(t) * dq(t)) / q(t) ** 2

    def d2f(t):
        qt = q(t)
        # (p/q)'' = p''/q - 2 p' q'/q^2 - p q''/q^2 + 2 p q'^2/q^3
        return (
            d2p(t) / qt
            - 2.0 * dp(t) * dq(t) / qt ** 2
            - p(t) * d2q(t) / qt ** 2
            + 2.0 * p(t) * dq(t) ** 2 / qt ** 3
        )

    return f, df, d2f


def custom_rational(alpha_num, alpha_den=(1.0,), beta_num=(0.0,), beta_den=(1.0,)) -> WeightFunctions:
    """Rational weights; coefficient lists are in increasing degree."""
    if not np.any(np.asarray(alpha_den, dtype=float)) or not np.any(np.asarray(beta_den, dtype=float)):
        raise ConfigError("weights: zero denominator polynomial")
    a, da, d2a = _rational(alpha_num, alpha_den)
    b, db, _ = _rational(beta_num, beta_den)
    params = {
        "alpha_num": list(map(float, alpha_num)),
        "alpha_den": list(map(float, alpha_den)),
        "beta_num": list(map(float, beta_num)),
        "beta_den": list(map(float, beta_den)),
    }
    return WeightFunctions(a, b, da, d2a, db, preset="custom_rational", params=params)


def weights_from_config(cfg: dict) -> WeightFunctions:
    if not isinstance(cfg, dict):
        raise ConfigError("weights: expected an object")
    if "preset" in cfg:
        name = cfg["preset"]
        if name == "sasaki":
            return sasaki()
        if name == "cheeger_gromoll":
            return cheeger_gromoll()
        raise ConfigError(f"weights.preset: unknown preset {name!r}")
    if "alpha_num" not in cfg:
        raise ConfigError("weights: need 'preset' or 'alpha_num'")
    try:
        return custom_rational(
            cfg["alpha_num"],
            cfg.get("alpha_den", [1.0]),
            cfg.get("beta_num", [0.0]),
            cfg.get("beta_den", [1.0]),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"weights: {exc}") from exc


# -- natural family ----------------------------------------------------------


def frame_weights(W: WeightFunctions, g: MetricField, p: FramePoint, gx=None):
    """``(t, [WeightValues per frame vector])`` with ``t_i = |u_i|_g^2``."""
    if gx is None:
        gx = g.eval(p.x)
    t = np.einsum("ji,jk,ki->i", p.u, gx, p.u)
    return t, [weights_eval(W, ti) for ti in t]


def vertical_block(gx, ui, w: WeightValues) -> np.ndarray:
    """Matrix of ``alpha g + beta g(., u_i) g(., u_i)`` on one vertical copy."""
    gu = gx @ ui
    return w.alpha * gx + w.beta * np.outer(gu, gu)


def natural_metric(W: WeightFunctions, g: MetricField, p: FramePoint,
                   A: LMTangent, B: LMTangent) -> float:
    gx = g.eval(p.x)
    _, ws = frame_weights(W, g, p, gx)
    val = A.h @ gx @ B.h
    for i, w in enumerate(ws):
        gu = gx @ p.u[:, i]
        val += w.alpha * (A.v[i] @ gx @ B.v[i]) + w.beta * (A.v[i] @ gu) * (B.v[i] @ gu)
    return float(val)


def natural_gram(W: WeightFunctions, g: MetricField, p: FramePoint) -> np.ndarray:
    """Gram matrix in the coordinate-lifted basis ``(d_a^h, d_j^{v,i})``."""
    gx = g.eval(p.x)
    _, ws = frame_weights(W, g, p, gx)
    n = p.n
    out = np.zeros((n + n * n, n + n * n))
    out[:n, :n] = gx
    for i, w in enumerate(ws):
        sl = slice(n + i * n, n + (i + 1) * n)
        out[sl, sl] = vertical_block(gx, p.u[:, i], w)
    return out


def natural_chart_metric(W: WeightFunctions, g: MetricField, p: FramePoint, gam=None) -> np.ndarray:
    """Metric components in the chart ``(x, u_1, ..., u_n)``."""
    gx = g.eval(p.x)
    if gam is None:
        gam = christoffel(g, p.x)
    _, ws = frame_weights(W, g, p, gx)
    alpha = np.array([w.alpha for w in ws])
    beta = np.array([w.beta for w in ws])
    return kernels.natural_chart_metric(gx, gam, p.u, alpha, beta)


# -- general family ----------------------------------------------------------


@dataclass(frozen=True)
class GeneralMetricSpec:
    """``Cbar = [[1, c], [c^T, C]]`` plus a natural metric on TM.

    The TM metric has horizontal block ``g``, cross block ``rho(t) g`` and
    vertical block ``alpha(t) g + beta(t) g(., w) g(., w)`` at the point
    ``F(u) = w``. ``F`` is either ``"per_index"`` (``F_i(u) = u_i``) or an int
    ``k`` for the single map ``F(u) = u_k``.
    """

    c: np.ndarray
    C: np.ndarray
    weights: WeightFunctions = field(default_factory=sasaki)
    rho: Optional[Callable[[float], float]] = None
    F: Union[str, int] = "per_index"

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        C = np.asarray(self.C, dtype=float)
        if C.shape != (c.size, c.size):
            raise InvalidSpec("C must be n x n with n = len(c)")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "C", C)
        try:
            cert = assert_pd(self.cbar)
        except NotSymmetric as exc:
            raise InvalidSpec(f"Cbar is not symmetric: {exc}") from exc
        if not cert:
            raise InvalidSpec(
                f"Cbar is not positive definite (leading minor {cert.failing_minor} <= 0)"
            )
        if self.F != "per_index" and not (isinstance(self.F, int) and 0 <= self.F < c.size):
            raise InvalidSpec(f"F must be 'per_index' or a frame index, got {self.F!r}")

    @property
    def cbar(self) -> np.ndarray:
        n = self.c.size
        out = np.empty((n + 1, n + 1))
        out[0, 0] = 1.0
        out[0, 1:] = self.c
        out[1:, 0] = self.c
        out[1:, 1:] = self.C
        return out

    @classmethod
    def from_json(cls, obj: dict, weights: Optional[WeightFunctions] = None) -> "GeneralMetricSpec":
        try:
            c = np.asarray(obj["c"], dtype=float)
            C = np.asarray(obj["C"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"general metric: need numeric 'c' and 'C' ({exc})") from exc
        rho = None
        if "rho_num" in obj:
            rho = _rational(obj["rho_num"], obj.get("rho_den", [1.0]))[0]
        return cls(c, C, weights or sasaki(), rho, obj.get("F", "per_index"))


def tm_blocks(spec: GeneralMetricSpec, gx, w_point) -> tuple:
    """``(g^{hv}, g-hat)`` of the TM metric at the fibre point ``w_point``."""
    t = float(w_point @ gx @ w_point)
    wv = weights_eval(spec.weights, t)
    rho = 0.0 if spec.rho is None else float(spec.rho(t))
    return rho * gx, vertical_block(gx, w_point, wv)


def general_metric(spec: GeneralMetricSpec, g: MetricField, p: FramePoint,
                   A: LMTangent, B: LMTangent) -> float:
    gx = g.eval(p.x)
    n = p.n
    if spec.F == "per_index":
        blocks = [tm_blocks(spec, gx, p.u[:, i]) for i in range(n)]
    else:
        blocks = [tm_blocks(spec, gx, p.u[:, spec.F])] * n
    val = A.h @ gx @ B.h
    for i in range(n):
        hv = blocks[i][0]
        val += spec.c[i] * (A.h @ hv @ B.v[i] + A.v[i] @ hv @ B.h)
        for j in range(n):
            if spec.C[i, j] == 0.0:
                continue
            # distinct evaluation points for i != j: symmetrised
            vv = 0.5 * (blocks[i][1] + blocks[j][1])
            val += spec.C[i, j] * (A.v[i] @ vv @ B.v[j])
    return float(val)


def gram(metric: Callable[[LMTangent, LMTangent], float], basis: Sequence[LMTangent]) -> np.ndarray:
    """Pairwise metric values on ``basis``; symmetrised from the upper triangle."""
    m = len(basis)
    out = np.empty((m, m))
    for a in range(m):
        for b in range(a, m):
            out[a, b] = out[b, a] = metric(basis[a], basis[b])
    return out


def orthonormal_basis(gx) -> np.ndarray:
    """Columns form a g-orthonormal basis (Gram-Schmidt on coordinate axes)."""
    n = gx.shape[0]
    E = np.zeros((n, n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = 1.0
        for m in range(k):
            e = e - (E[:, m] @ gx @ e) * E[:, m]
        E[:, k] = e / np.sqrt(e @ gx @ e)
    return E


def lifted_basis(n: int, base: Optional[np.ndarray] = None) -> list:
    """``e_a^h`` then ``e_j^{v,i}`` (i outer), from the columns of ``base``."""
    E = np.eye(n) if base is None else np.asarray(base, dtype=float)
    out = [LMTangent.horizontal(E[:, a]) for a in range(n)]
    out += [LMTangent.vertical(E[:, j], i) for i in range(n) for j in range(n)]
    return out


def kron_block(G, c, C) -> np.ndarray:
    """Assemble ``[[I, c (x) g^hv], [c^T (x) g^vh, C (x) g-hat]]`` from G.

    ``G = [[I, g^hv], [g^vh, g-hat]]`` is ``2n x 2n``; the result is
    ``(n + n^2) x (n + n^2)``.
    """
    G = np.asarray(G, dtype=float)
    c = np.asarray(c, dtype=float).reshape(1, -1)
    C = np.asarray(C, dtype=float)
    n = G.shape[0] // 2
    if G.shape != (2 * n, 2 * n) or c.shape[1] != n or C.shape != (n, n):
        raise InvalidSpec("kron_block: G must be 2n x 2n, c length n, C n x n")
    if not np.allclose(G[:n, :n], np.eye(n), atol=1e-12):
        raise InvalidSpec("kron_block: upper-left block of G must be the identity")
    ghv, gvh, ghat = G[:n, n:], G[n:, :n], G[n:, n:]
    N = n + n * n
    out = np.empty((N, N))
    out[:n, :n] = np.eye(n)
    out[:n, n:] = np.kron(c, ghv)
    out[n:, :n] = np.kron(c.T, gvh)
    out[n:, n:] = np.kron(C, ghat)
    return out


@dataclass(frozen=True)
class PDCertificate:
    """Outcome of a Cholesky positive-definiteness check.

    Truthy iff the matrix is positive definite. ``failing_minor`` is the
    1-based size of the first leading principal minor that is not positive.
    """

    ok: bool
    failing_minor: Optional[int]
    min_pivot: float
    factor: Optional[np.ndarray] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"positive_definite": self.ok, "failing_minor": self.failing_minor,
                "min_pivot": self.min_pivot}


def assert_pd(M, sym_tol: float = 1e-10) -> PDCertificate:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSymmetric(f"not a square matrix: shape {M.shape}")
    asym = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if asym > sym_tol:
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds {sym_tol:g}")
    L, pivots, k = kernels.cholesky_pivots(np.ascontiguousarray(M))
    if k >= 0:
        return PDCertificate(False, k + 1, float(pivots[k]))
    return PDCertificate(True, None, float(pivots.min()) if pivots.size else np.inf, L)
