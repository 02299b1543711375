"""Riemannian base manifolds presented in a single coordinate chart.

A :class:`MetricField` is a callable ``x -> g(x)`` plus (optional) analytic
derivatives up to third order. Missing derivatives fall back to central
differences of the next lower order.

Curvature convention: ``R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
nabla_[X,Y] Z``, so a space form of curvature ``kappa`` has
``R(X, Y)Z = kappa (g(Y, Z) X - g(X, Z) Y)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .errors import ConfigError, SingularMetric

FD_STEPS = (1e-5, 1e-4, 1e-3)
_COND_LIMIT = 1e13


def _always(x) -> bool:
    return True


def _central_diff(f, x, h):
    """Stack ``d_c f(x)`` along a new leading axis (step scaled by |x_c|)."""
    x = np.asarray(x, dtype=float)
    out = []
    for c in range(x.size):
        hc = h * max(1.0, abs(x[c]))
        xp = x.copy()
        xm = x.copy()
        xp[c] += hc
        xm[c] -= hc
        out.append((np.asarray(f(xp)) - np.asarray(f(xm))) / (2.0 * hc))
    return np.stack(out)


@dataclass(frozen=True)
class MetricField:
    """Base metric ``g`` on an open chart of R^n.

    ``d1(x)[c, a, b] = d_c g_ab``, ``d2(x)[d, c, a, b]`` and ``d3`` likewise.
    """

    dim: int
    metric: Callable[[np.ndarray], np.ndarray]
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    d3: Optional[Callable] = None
    chart_domain: Callable[[np.ndarray], bool] = _always
    name: str = "custom"
    kappa: Optional[float] = None
    fd_steps: tuple = FD_STEPS

    @property
    def derivative_mode(self) -> str:
        return "analytic" if self.d1 is not None else "finite-difference"

    def eval(self, x) -> np.ndarray:
        return np.asarray(self.metric(np.asarray(x, dtype=float)), dtype=float)

    def deriv1(self, x) -> np.ndarray:
        if self.d1 is not None:
            return np.asarray(self.d1(np.asarray(x, dtype=float)))
        return _central_diff(self.eval, x, self.fd_steps[0])

    def deriv2(self, x) -> np.ndarray:
        if self.d2 is not None:
            return np.asarray(self.d2(np.asarray(x, dtype=float)))
        return _central_diff(self.deriv1, x, self.fd_steps[1])

    def deriv3(self, x) -> np.ndarray:
        if self.d3 is not None:
            return np.asarray(self.d3(np.asarray(x, dtype=float)))
        return _central_diff(self.deriv2, x, self.fd_steps[2])

    def inner(self, x, X, Y) -> float:
        return float(np.asarray(X) @ self.eval(x) @ np.asarray(Y))

    def contains(self, x) -> bool:
        return bool(self.chart_domain(np.asarray(x, dtype=float)))


def _inverse(gx):
    try:
        if np.linalg.cond(gx) > _COND_LIMIT:
            raise SingularMetric(f"metric is numerically singular: {gx!r}")
        return np.linalg.inv(gx)
    except np.linalg.LinAlgError as exc:
        raise SingularMetric(str(exc)) from exc


def space_form(n: int, kappa: float) -> MetricField:
    """Conformally flat chart of the space form of curvature ``kappa``.

    ``g(x) = (1 + kappa |x|^2 / 4)^-2 * I``, defined on R^n for kappa >= 0 and
    on the ball ``|x|^2 < -4/kappa`` otherwise.
    """
    if n < 2:
        raise ConfigError("space_form needs n >= 2")
    k = float(kappa)
    eye = np.eye(n)

    def phi_parts(x):
        phi = 1.0 + 0.25 * k * (x @ x)
        return phi, 0.5 * k * x

    def metric(x):
        phi, _ = phi_parts(x)
        return phi ** -2 * eye

    def d1(x):
        phi, dphi = phi_parts(x)
        return np.einsum("c,ab->cab", -2.0 * phi ** -3 * dphi, eye)

    def d2(x):
        phi, dphi = phi_parts(x)
        psi2 = 6.0 * phi ** -4 * np.outer(dphi, dphi) - phi ** -3 * k * eye
        return np.einsum("dc,ab->dcab", psi2, eye)

    def d3(x):
        phi, dphi = phi_parts(x)
        ddphi = 0.5 * k * eye
        psi3 = -24.0 * phi ** -5 * np.einsum("c,d,e->cde", dphi, dphi, dphi)
        psi3 += 6.0 * phi ** -4 * (
            np.einsum("ce,d->cde", ddphi, dphi)
            + np.einsum("c,de->cde", dphi, ddphi)
            + np.einsum("e,cd->cde", dphi, ddphi)
        )
        return np.einsum("cde,ab->edcab", psi3, eye)

    if k < 0:
        radius2 = -4.0 / k

        def domain(x):
            return float(x @ x) < radius2

    else:
        domain = _always
    return MetricField(
        dim=n,
        metric=metric,
        d1=d1,
        d2=d2,
        d3=d3,
        chart_domain=domain,
        name=f"space_form(n={n}, kappa={k:g})",
        kappa=k,
    )


def _monomial_deriv(coef, powers, idx, x):
    p = np.array(powers, dtype=int)
    c = float(coef)
    for i in idx:
        if p[i] == 0:
            return 0.0
        c *= p[i]
        p[i] -= 1
    return c * float(np.prod(x ** p))


def polynomial_metric(n: int, terms: Sequence, identity: bool = True) -> MetricField:
    """Metric with polynomial entries.

    Each term is ``(i, j, coef, powers)`` and adds ``coef * prod x_k^powers[k]``
    to ``g_ij`` (and ``g_ji``). With ``identity=True`` the terms perturb I.
    """
    parsed = []
    for term in terms:
        try:
            i, j, coef, powers = term
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad polynomial term {term!r}") from exc
        if not (0 <= int(i) < n and 0 <= int(j) < n) or len(powers) != n:
            raise ConfigError(f"polynomial term out of range: {term!r}")
        parsed.append((int(i), int(j), float(coef), tuple(int(p) for p in powers)))
    base = np.eye(n) if identity else np.zeros((n, n))

    def build(order):
        def fn(x):
            x = np.asarray(x, dtype=float)
            out = np.zeros((n,) * order + (n, n))
            if order == 0:
                out += base
            for idx in itertools.product(range(n), repeat=order):
                for i, j, coef, powers in parsed:
                    val = _monomial_deriv(coef, powers, idx, x)
                    out[idx + (i, j)] += val
                    if i != j:
                        out[idx + (j, i)] += val
            return out

        return fn

    return MetricField(
        dim=n,
        metric=build(0),
        d1=build(1),
        d2=build(2),
        d3=build(3),
        name="custom_polynomial",
    )


def flat(n: int) -> MetricField:
    return space_form(n, 0.0)


def christoffel(g: MetricField, x) -> np.ndarray:
    """``gam[j, a, b] = Gamma^j_ab`` at ``x``."""
    gx = g.eval(x)
    return kernels.christoffel_from_derivs(_inverse(gx), g.deriv1(x))


def riemann(g: MetricField, x) -> np.ndarray:
    """``rm[i, j, k, l]``: component ``l`` of ``R(d_i, d_j) d_k`` at ``x``."""
    gx = g.eval(x)
    _, _, rm = kernels.curvature_from_derivs(_inverse(gx), g.deriv1(x), g.deriv2(x))
    return rm


def nabla_riemann(g: MetricField, x) -> np.ndarray:
    """``nr[e, i, j, k, l]``: component ``l`` of ``(nabla_e R)(d_i, d_j) d_k``.

    Uses the third metric derivatives (analytic when the field provides them).
    """
    gx = g.eval(x)
    ginv = _inverse(gx)
    dg, d2g, d3g = g.deriv1(x), g.deriv2(x), g.deriv3(x)
    gam, dgam, rm = kernels.curvature_from_derivs(ginv, dg, d2g)

    first = 0.5 * (np.transpose(dg, (1, 0, 2)) + np.transpose(dg, (1, 2, 0)) - dg)
    dfirst = 0.5 * (
        np.transpose(d2g, (0, 2, 1, 3)) + np.transpose(d2g, (0, 2, 3, 1)) - d2g
    )
    # d3g[f, e, c, a, b] = d_f d_e d_c g_ab -> d_f d_e first[c, a, b]
    d2first = 0.5 * (
        np.transpose(d3g, (0, 1, 3, 2, 4))
        + np.transpose(d3g, (0, 1, 3, 4, 2))
        - d3g
    )
    dginv = -np.einsum("lc,ecd,dm->elm", ginv, dg, ginv)
    d2ginv = -(
        np.einsum("flc,ecd,dm->felm", dginv, dg, ginv)
        + np.einsum("lc,fecd,dm->felm", ginv, d2g, ginv)
        + np.einsum("lc,ecd,fdm->felm", ginv, dg, dginv)
    )
    d2gam = (
        np.einsum("felc,cab->felab", d2ginv, first)
        + np.einsum("elc,fcab->felab", dginv, dfirst)
        + np.einsum("flc,ecab->felab", dginv, dfirst)
        + np.einsum("lc,fecab->felab", ginv, d2first)
    )
    # d_e of rm[i,j,k,l] = dgam[i,l,j,k] - dgam[j,l,i,k] + gam[m,j,k] gam[l,i,m] - ...
    drm = (
        np.einsum("eiljk->eijkl", d2gam)
        - np.einsum("ejlik->eijkl", d2gam)
        + np.einsum("emjk,lim->eijkl", dgam, gam)
        + np.einsum("mjk,elim->eijkl", gam, dgam)
        - np.einsum("emik,ljm->eijkl", dgam, gam)
        - np.einsum("mik,eljm->eijkl", gam, dgam)
    )
    return (
        drm
        - np.einsum("mei,mjkl->eijkl", gam, rm)
        - np.einsum("mej,imkl->eijkl", gam, rm)
        - np.einsum("mek,ijml->eijkl", gam, rm)
        + np.einsum("lem,ijkm->eijkl", gam, rm)
    )


def curvature_apply(rm, X, Y, Z) -> np.ndarray:
    """``R(X, Y)Z`` from a curvature array."""
    return np.einsum("ijkl,i,j,k->l", rm, X, Y, Z)


def nabla_curvature_apply(nr, W, X, Y, Z) -> np.ndarray:
    """``(nabla_W R)(X, Y)Z``."""
    return np.einsum("eijkl,e,i,j,k->l", nr, W, X, Y, Z)


def sectional_base(g: MetricField, x, X, Y) -> float:
    """Sectional curvature ``g(R(X,Y)Y, X) / |X ^ Y|^2`` of the base."""
    gx = g.eval(x)
    rxy = curvature_apply(riemann(g, x), X, Y, Y)
    area = (X @ gx @ X) * (Y @ gx @ Y) - (X @ gx @ Y) ** 2
    return float(rxy @ gx @ X / area)


def scalar_base(g: MetricField, x) -> float:
    gx = g.eval(x)
    ginv = _inverse(gx)
    ric = np.einsum("kijk->ij", riemann(g, x))  # Ric(d_i, d_j) = tr(Z -> R(Z, d_i)d_j)
    return float(np.einsum("ij,ij->", ginv, ric))


def metric_from_config(cfg: dict) -> MetricField:
    """Build a base metric from its JSON description.

    ``{"type": "space_form", "dim": 2, "kappa": 1.0}`` or
    ``{"type": "custom_polynomial", "dim": 2, "coeffs": [[i, j, c, [p...]], ...]}``.
    """
    if not isinstance(cfg, dict):
        raise ConfigError("base: expected an object")
    kind = cfg.get("type")
    try:
        n = int(cfg["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("base.dim: missing or not an integer") from exc
    if kind == "space_form":
        if "kappa" not in cfg:
            raise ConfigError("base.kappa: missing")
        try:
            kappa = float(cfg["kappa"])
        except (TypeError, ValueError) as exc:
            raise ConfigError("base.kappa: not a number") from exc
        return space_form(n, kappa)
    if kind == "flat":
        return flat(n)
    if kind == "custom_polynomial":
        coeffs = cfg.get("coeffs")
        if not isinstance(coeffs, list):
            raise ConfigError("base.coeffs: expected a list of [i, j, coef, powers]")
        return polynomial_metric(n, coeffs, identity=bool(cfg.get("identity", True)))
    raise ConfigError(f"base.type: unknown base manifold type {kind!r}")
