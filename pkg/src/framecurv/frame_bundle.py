"""Points and tangent vectors of the frame bundle L(M) in the induced chart.

Chart coordinates on L(M) are ``(x_a, u^j_i)`` where ``u[j, i]`` is component
``j`` of the frame vector ``u_i``. Frame indices are 0-based.

Two representations of a tangent vector at a frame ``u`` are used:

* :class:`CoordTangent` - components ``a`` along ``d/dx`` and ``b[j, i]`` along
  ``d/du^j_i``.
* :class:`LMTangent` - the horizontal part ``h`` (a base vector, through the
  horizontal lift) and the vertical parts ``v[i]`` (base vectors, through the
  vertical lift into the i-th vertical subbundle).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .base_manifold import MetricField, christoffel, curvature_apply, riemann
from .errors import IndexOutOfRange, InvalidFrame

DET_MIN = 1e-9


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FramePoint:
    x: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        x = _frozen(self.x).reshape(-1)
        u = _frozen(self.u)
        n = x.size
        if u.shape != (n, n):
            raise InvalidFrame(f"frame matrix must be {n}x{n}, got {u.shape}")
        if not np.all(np.isfinite(u)) or not np.all(np.isfinite(x)):
            raise InvalidFrame("non-finite frame point")
        if abs(np.linalg.det(u)) <= DET_MIN:
            raise InvalidFrame("frame vectors are not a basis (|det u| <= 1e-9)")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "u", u)

    @property
    def n(self) -> int:
        return self.x.size

    def frame_vector(self, i: int) -> np.ndarray:
        return self.u[:, _check_index(i, self.n)]

    def chart(self) -> np.ndarray:
        """Chart coordinates ``(x, u_1, ..., u_n)`` as one flat vector."""
        return np.concatenate([self.x, self.u.T.ravel()])

    @classmethod
    def from_chart(cls, q) -> "FramePoint":
        q = np.asarray(q, dtype=float)
        n = int(round((np.sqrt(1 + 4 * q.size) - 1) / 2))
        return cls(q[:n], q[n:].reshape(n, n).T)

    def to_json(self) -> dict:
        return {"x": self.x.tolist(), "u": self.u.tolist()}

    @classmethod
    def from_json(cls, obj) -> "FramePoint":
        return cls(np.asarray(obj["x"], dtype=float), np.asarray(obj["u"], dtype=float))


@dataclass(frozen=True, eq=False)
class LMTangent:
    """Tangent vector split as ``h`` (horizontal) + ``v[i]`` (vertical, index i)."""

    h: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float).reshape(-1)
        v = np.asarray(self.v, dtype=float)
        if v.shape != (h.size, h.size):
            raise ValueError(f"vertical parts must be {h.size}x{h.size}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "v", v)

    @classmethod
    def zero(cls, n: int) -> "LMTangent":
        return cls(np.zeros(n), np.zeros((n, n)))

    @classmethod
    def horizontal(cls, X) -> "LMTangent":
        X = np.asarray(X, dtype=float)
        return cls(X, np.zeros((X.size, X.size)))

    @classmethod
    def vertical(cls, X, i: int) -> "LMTangent":
        X = np.asarray(X, dtype=float)
        v = np.zeros((X.size, X.size))
        v[_check_index(i, X.size)] = X
        return cls(np.zeros(X.size), v)

    @property
    def n(self) -> int:
        return self.h.size

    def flat(self) -> np.ndarray:
        """Components in the lifted basis ``(e^h, e^{v,0}, ..., e^{v,n-1})``."""
        return np.concatenate([self.h, self.v.ravel()])

    @classmethod
    def from_flat(cls, w) -> "LMTangent":
        w = np.asarray(w, dtype=float)
        n = int(round((np.sqrt(1 + 4 * w.size) - 1) / 2))
        return cls(w[:n], w[n:].reshape(n, n))

    def __add__(self, other: "LMTangent") -> "LMTangent":
        return LMTangent(self.h + other.h, self.v + other.v)

    def __sub__(self, other: "LMTangent") -> "LMTangent":
        return LMTangent(self.h - other.h, self.v - other.v)

    def __neg__(self) -> "LMTangent":
        return LMTangent(-self.h, -self.v)

    def __mul__(self, s: float) -> "LMTangent":
        return LMTangent(s * self.h, s * self.v)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class CoordTangent:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float).reshape(-1))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))

    def flat(self) -> np.ndarray:
        """Components ordered like :meth:`FramePoint.chart`."""
        return np.concatenate([self.a, self.b.T.ravel()])

    @classmethod
    def from_flat(cls, w) -> "CoordTangent":
        w = np.asarray(w, dtype=float)
        n = int(round((np.sqrt(1 + 4 * w.size) - 1) / 2))
        return cls(w[:n], w[n:].reshape(n, n).T)


def _check_index(i, n) -> int:
    if not isinstance(i, (int, np.integer)) or not 0 <= i < n:
        raise IndexOutOfRange(f"frame index {i!r} not in 0..{n - 1}")
    return int(i)


def right_mult(p: FramePoint, i: int):
    """The map ``R_i``: frame ``u`` -> its i-th vector, as a point of TM."""
    return p.x, p.u[:, _check_index(i, p.n)].copy()


def right_mult_pushforward(t: CoordTangent, p: FramePoint, i: int, g: MetricField):
    """Push ``t`` forward by ``R_i`` and split it in TTM.

    Returns ``(horizontal, vertical)`` base vectors: the projection to M and the
    connection-map image ``b_i + Gamma(a, u_i)``.
    """
    i = _check_index(i, p.n)
    gam = christoffel(g, p.x)
    return t.a.copy(), t.b[:, i] + np.einsum("jcb,c,b->j", gam, p.u[:, i], t.a)


def horizontal_lift(X, p: FramePoint, g: MetricField) -> CoordTangent:
    X = np.asarray(X, dtype=float)
    gam = christoffel(g, p.x)
    return CoordTangent(X, -np.einsum("jab,ai,b->ji", gam, p.u, X))


def vertical_lift(X, i: int, n: Optional[int] = None) -> CoordTangent:
    X = np.asarray(X, dtype=float)
    n = X.size if n is None else n
    i = _check_index(i, n)
    b = np.zeros((n, n))
    b[:, i] = X
    return CoordTangent(np.zeros(n), b)


def decompose(t: CoordTangent, p: FramePoint, g: MetricField, gam=None) -> LMTangent:
    """Chart components -> horizontal/vertical split."""
    if gam is None:
        gam = christoffel(g, p.x)
    v = t.b + np.einsum("jcb,ci,b->ji", gam, p.u, t.a)
    return LMTangent(t.a.copy(), v.T)


def recompose(w: LMTangent, p: FramePoint, g: MetricField, gam=None) -> CoordTangent:
    """Inverse of :func:`decompose`."""
    if gam is None:
        gam = christoffel(g, p.x)
    b = w.v.T - np.einsum("jcb,ci,b->ji", gam, p.u, w.h)
    return CoordTangent(w.h.copy(), b)


def decompose_matrix(p: FramePoint, g: MetricField, gam=None) -> np.ndarray:
    """Matrix taking flat chart components to flat lifted components."""
    if gam is None:
        gam = christoffel(g, p.x)
    n = p.n
    N = n + n * n
    E = np.eye(N)
    # row (i, j) of the vertical block picks up Gamma^j_cb u^c_i a_b
    E[n:, :n] = np.einsum("jcb,ci->ijb", gam, p.u).reshape(n * n, n)
    return E


# -- base vector fields -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class AffineField:
    """Vector field ``Y(x) = value + jac @ (x - x0)`` on the chart."""

    x0: np.ndarray
    value: np.ndarray
    jac: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.value).size
        object.__setattr__(self, "x0", np.asarray(self.x0, dtype=float))
        object.__setattr__(self, "value", np.asarray(self.value, dtype=float))
        jac = np.zeros((n, n)) if self.jac is None else np.asarray(self.jac, dtype=float)
        object.__setattr__(self, "jac", jac)

    @classmethod
    def constant(cls, value, x0=None) -> "AffineField":
        value = np.asarray(value, dtype=float)
        x0 = np.zeros(value.size) if x0 is None else x0
        return cls(x0, value, None)

    def __call__(self, x) -> np.ndarray:
        return self.value + self.jac @ (np.asarray(x, dtype=float) - self.x0)

    def jacobian(self, x) -> np.ndarray:
        """``J[a, b] = d_b Y^a``."""
        return self.jac


def covariant_derivative(g: MetricField, x, X, Y: AffineField, gam=None) -> np.ndarray:
    """``nabla_X Y`` at ``x`` for a base vector ``X`` and field ``Y``."""
    if gam is None:
        gam = christoffel(g, x)
    Yx = Y(x)
    return Y.jacobian(x) @ X + np.einsum("jab,a,b->j", gam, X, Yx)


HORIZONTAL = "h"
Kind = Union[str, int]


def _kind(k: Kind, n: int):
    if k == HORIZONTAL:
        return HORIZONTAL
    return _check_index(k, n)


def lie_bracket(X: AffineField, Y: AffineField, kind_x: Kind, kind_y: Kind,
                p: FramePoint, g: MetricField) -> LMTangent:
    """Bracket of lifted base fields at ``p`` (kinds: ``"h"`` or a vertical index)."""
    n = p.n
    kx, ky = _kind(kind_x, n), _kind(kind_y, n)
    x = p.x
    if kx != HORIZONTAL and ky != HORIZONTAL:
        return LMTangent.zero(n)
    gam = christoffel(g, x)
    if kx == HORIZONTAL and ky == HORIZONTAL:
        Xv, Yv = X(x), Y(x)
        br = Y.jacobian(x) @ Xv - X.jacobian(x) @ Yv
        rm = riemann(g, x)
        v = -np.stack([curvature_apply(rm, Xv, Yv, p.u[:, i]) for i in range(n)])
        return LMTangent(br, v)
    if kx == HORIZONTAL:
        return LMTangent.vertical(covariant_derivative(g, x, X(x), Y, gam), ky)
    return -LMTangent.vertical(covariant_derivative(g, x, Y(x), X, gam), kx)


def lifted_field_chart(Y: AffineField, kind: Kind, g: MetricField) -> Callable:
    """Chart representation ``q -> flat CoordTangent`` of a lifted base field."""

    def field(q):
        p = FramePoint.from_chart(q)
        k = _kind(kind, p.n)
        if k == HORIZONTAL:
            return horizontal_lift(Y(p.x), p, g).flat()
        return vertical_lift(Y(p.x), k, p.n).flat()

    return field


def random_frame(rng: np.random.Generator, n: int, det_min: float = 0.1) -> np.ndarray:
    """Frame matrix with entries in [-1, 1] and ``|det| > det_min``."""
    while True:
        u = rng.uniform(-1.0, 1.0, size=(n, n))
        if abs(np.linalg.det(u)) > det_min:
            return u


def random_point(rng: np.random.Generator, n: int, radius: float = 0.5) -> np.ndarray:
    """Uniform point in the ball ``|x| <= radius``."""
    d = rng.normal(size=n)
    d /= np.linalg.norm(d)
    return radius * rng.uniform() ** (1.0 / n) * d


def random_frame_point(rng: np.random.Generator, n: int, radius: float = 0.5) -> FramePoint:
    return FramePoint(random_point(rng, n, radius), random_frame(rng, n))
