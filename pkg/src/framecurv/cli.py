"""Command-line front end: ``framecurv verify | eval | sweep | pd-check``.

Exit codes: 0 pass, 1 usage/config error, 2 verified discrepancy.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import jsonschema
import numpy as np

from . import checks, kernels
from . import closed_form as cf
from . import oracle
from .base_manifold import MetricField, metric_from_config, space_form
from .errors import ConfigError, FrameCurvError, InvalidSpec
from .frame_bundle import HORIZONTAL, AffineField, FramePoint, LMTangent
from .metrics import (
    GeneralMetricSpec,
    WeightFunctions,
    assert_pd,
    kron_block,
    lifted_basis,
    natural_metric,
    orthonormal_basis,
    weights_eval,
    weights_from_config,
)

log = logging.getLogger("framecurv")

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CONFIG, EXIT_DISCREPANCY = 0, 1, 2

_num = {"type": "number"}
_vec = {"type": "array", "items": _num}
_kind = {"anyOf": [{"const": "h"}, {"type": "integer", "minimum": 0}]}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "base": {
            "type": "object",
            "properties": {
                "type": {"enum": ["space_form", "flat", "custom_polynomial"]},
                "dim": {"type": "integer", "minimum": 2},
                "kappa": _num,
                "coeffs": {"type": "array"},
                "identity": {"type": "boolean"},
            },
            "required": ["type"],
        },
        "weights": {
            "type": "object",
            "properties": {
                "preset": {"enum": ["sasaki", "cheeger_gromoll"]},
                "alpha_num": _vec, "alpha_den": _vec, "beta_num": _vec, "beta_den": _vec,
            },
        },
        "dim": {"type": "integer", "minimum": 2},
        "seed": {"type": "integer", "minimum": 0},
        "samples": {"type": "integer", "minimum": 1},
        "curvature_samples": {"type": "integer", "minimum": 1},
        "invariant_samples": {"type": "integer", "minimum": 1},
        "scalar_samples": {"type": "integer", "minimum": 0},
        "tolerance": _num,
        "point": {
            "type": "object",
            "properties": {"x": _vec, "u": {"type": "array", "items": _vec}},
            "required": ["x", "u"],
        },
        "quantity": {"enum": ["connection", "curvature", "sectional", "scalar", "gram"]},
        "vectors": {
            "type": "object",
            "properties": {
                "X": _vec, "Y": _vec, "Z": _vec,
                "kinds": {"type": "array", "items": _kind},
                "jacobian_Y": {"type": "array", "items": _vec},
            },
        },
        "sweep": {
            "type": "object",
            "properties": {
                "kappa": _vec,
                "t": _vec,
                "presets": {"type": "array", "items": {"enum": ["sasaki", "cheeger_gromoll"]}},
            },
        },
        "general": {
            "type": "object",
            "properties": {"c": _vec, "C": {"type": "array", "items": _vec}},
            "required": ["c", "C"],
        },
        "trials": {"type": "integer", "minimum": 1},
    },
}


# -- config ----------------------------------------------------------------------


def load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    validate_config(cfg)
    return cfg


def validate_config(cfg):
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config field '{where}': {exc.message}") from exc


def build_base(cfg, dim=None) -> MetricField:
    base = dict(cfg.get("base", {"type": "flat"}))
    n = dim or cfg.get("dim") or base.get("dim") or 2
    base["dim"] = n
    if base.get("type") == "flat":
        base.setdefault("kappa", 0.0)
    return metric_from_config(base)


def build_weights(cfg) -> WeightFunctions:
    W = weights_from_config(cfg.get("weights", {"preset": "sasaki"}))
    W.validate()
    return W


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("FRAMECURV_THREADS", "1")))
    except ValueError:
        return 1


def _dump(obj, out):
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _timestamp():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# -- verify ------------------------------------------------------------------------


def adjudications(W: WeightFunctions, g: MetricField, seed: int, samples: int = 20) -> list:
    """Oracle verdicts on the printed formulas flagged as doubtful."""
    n = g.dim
    out = []
    hv = oracle.compare_sectional_hv(W, g, samples=samples, seed=seed)
    case = hv.cases["sectional_hv"]
    out.append({
        "item": "sectional_hv_general",
        "reference": "sectional corollary, K(X^h, Y^{v,i}) = alpha_i^2 |R(u_i,Y)X|^2 / (4(alpha_i + beta_i g(Y,u_i)^2))",
        "max_rel_err_vs_oracle": case.max_rel_err,
        "verdict": "confirmed" if case.passed else "discrepant",
    })
    if g.kappa is not None:
        sq = pr = 0.0
        for idx in range(samples):
            rng = oracle._sample_rng(seed, 10_000 + idx)
            p = oracle._sample_point(rng, n)
            geo = cf.PointGeometry(W, g, p)
            X, Y = oracle.orthonormal_pair(rng, geo.gx)
            tab = cf.sectional_table(W, g, p, X, Y, geo=geo)
            for i in range(n):
                ref = tab.hv[i]
                sq = max(sq, abs(tab.hv_space_form[i] - ref) / max(abs(ref), 1e-300) if ref else abs(tab.hv_space_form[i]))
                pr = max(pr, abs(tab.hv_space_form_printed[i] - ref) / max(abs(ref), 1e-300) if ref else abs(tab.hv_space_form_printed[i]))
        out.append({
            "item": "sectional_hv_space_form",
            "reference": "sectional corollary, constant-curvature line for K(X^h, Y^{v,i})",
            "squared_denominator_max_rel_err": sq,
            "printed_denominator_max_rel_err": pr,
            "verdict": "squared form g(Y,u_i)^2 is correct" if sq < 1e-8 else "squared form disagrees",
            "printed_form_matches": pr < 1e-8,
        })
    rem = checks.remark_identity(samples=200, seed=seed)
    out.append({
        "item": "remark_B_subscript",
        "reference": "remark: A_i alpha_i - B beta_i = C_i (alpha_i + |u_i|^2 beta_i)",
        "max_rel_residual_with_B_i": rem.max_rel_err,
        "verdict": "holds with B read as B_i" if rem.passed else "fails",
    })
    worst = 0.0
    for idx in range(min(samples, 5)):
        rng = oracle._sample_rng(seed, 20_000 + idx)
        p = oracle._sample_point(rng, n)
        ref = oracle.fd_scalar(oracle.ChartMetric(W, g), p.chart())
        worst = max(worst, abs(cf.scalar(W, g, p, printed=True) - ref) / max(abs(ref), 1.0))
    out.append({
        "item": "scalar_corollary_printed",
        "reference": "scalar curvature corollary, six-term vertical expression",
        "max_rel_err_vs_oracle": worst,
        "verdict": "matches oracle" if worst < 1e-3 else "printed vertical term disagrees with curvature trace; library uses the trace-derived term",
    })
    if W.preset == "cheeger_gromoll":
        viol_printed = viol_derived = 0
        total = 0
        for idx in range(200):
            rng = oracle._sample_rng(seed, 30_000 + idx)
            t = float(rng.uniform(1e-3, 10.0))
            s = float(rng.uniform(0.0, t))
            K = cf.cheeger_gromoll_vv(t, s)
            total += 1
            viol_printed += K < 3.0 / (t * (t + 1))
            viol_derived += K < 3.0 / (1 + t) ** 2 - 1e-12
        out.append({
            "item": "cheeger_gromoll_vertical_bound",
            "reference": "Cheeger-Gromoll corollary, K(X^{v,i},Y^{v,i}) >= 3/(t_i(t_i+1))",
            "samples": total,
            "violations_of_printed_bound": viol_printed,
            "violations_of_bound_3_over_(1+t)^2": viol_derived,
            "verdict": "printed bound is false; the formula's minimum over s <= t is 3/(1+t)^2 > 0",
        })
    return out


def run_verify(cfg, seed=0, samples=None, tolerance=None, dim=None) -> dict:
    g = build_base(cfg, dim)
    W = build_weights(cfg)
    n = g.dim
    conn_samples = samples or cfg.get("samples", 100)
    curv_samples = cfg.get("curvature_samples", 50 if n == 2 else 10)
    inv_samples = cfg.get("invariant_samples", 200)
    scal_samples = cfg.get("scalar_samples", 20 if n == 2 else 5)
    tol_conn = tolerance or cfg.get("tolerance", 1e-5)
    tol_curv = tolerance or 1e-3

    tasks = {
        "connection": lambda: oracle.compare_connection(W, g, conn_samples, seed, tol_conn),
        "curvature": lambda: oracle.compare_curvature(
            W, g, curv_samples, seed, tol_curv, scalar_samples=scal_samples),
        "torsion": lambda: checks.torsion(W, g, inv_samples, seed),
        "metric": lambda: checks.metric_compatibility(W, g, inv_samples, seed),
        "symmetries": lambda: checks.curvature_symmetries(W, g, inv_samples, seed),
        "sectional": lambda: checks.sectional_consistency(W, g, min(inv_samples, 100), seed),
        "remark": lambda: checks.remark_identity(1000, seed),
        "adjudications": lambda: adjudications(W, g, seed),
    }
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        futures = {k: pool.submit(fn) for k, fn in tasks.items()}
        results = {k: f.result() for k, f in futures.items()}

    invariants = {"torsion_free": results["torsion"], "metric_compatible": results["metric"],
                  "remark_identity": results["remark"]}
    invariants.update(results["symmetries"])
    invariants.update(results["sectional"])
    inv_json = {k: vars(v) for k, v in sorted(invariants.items())}
    reports = [results["connection"], results["curvature"]]
    discrepancies = [d for r in reports for d in r.discrepancies]
    discrepancies += [
        {"case": k, "reference": v.reference, "max_rel_err": v.max_rel_err, "tolerance": v.tolerance}
        for k, v in sorted(invariants.items()) if not v.passed
    ]
    return {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "timestamp": _timestamp(),
        "backend": kernels.BACKEND,
        "base": g.name,
        "weights": W.to_json(),
        "n": n,
        "seed": seed,
        "reports": {r.kind: r.to_json() for r in reports},
        "invariants": inv_json,
        "adjudications": results["adjudications"],
        "discrepancies": discrepancies,
        "passed": not discrepancies,
    }


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    report = run_verify(cfg, seed=_seed(args, cfg), samples=args.samples,
                        tolerance=args.tolerance, dim=args.dim)
    _dump(report, args.out)
    printed_bad = [a for a in report["adjudications"]
                   if "disagrees" in a["verdict"] or "false" in a["verdict"]]
    if not report["passed"] or (args.strict_formulas and printed_bad):
        return EXIT_DISCREPANCY
    return EXIT_OK


def _seed(args, cfg):
    return args.seed if args.seed is not None else cfg.get("seed", 0)


# -- eval --------------------------------------------------------------------------


def _kinds(vec_cfg, count):
    kinds = vec_cfg.get("kinds", ["h"] * count)
    if len(kinds) < count:
        raise ConfigError(f"vectors.kinds: need {count} entries")
    return kinds[:count]


def _vector(vec_cfg, name, n):
    if name not in vec_cfg:
        raise ConfigError(f"vectors.{name}: missing")
    v = np.asarray(vec_cfg[name], dtype=float)
    if v.shape != (n,):
        raise ConfigError(f"vectors.{name}: expected {n} components")
    return v


def _lift(V, k):
    return LMTangent.horizontal(V) if k == HORIZONTAL else LMTangent.vertical(V, int(k))


def run_eval(cfg, quantity=None, with_oracle=False, dim=None) -> dict:
    if "point" not in cfg:
        raise ConfigError("point: required for eval")
    try:
        p = FramePoint.from_json(cfg["point"])
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"point: {exc}") from exc
    g = build_base(cfg, dim or p.n)
    if g.dim != p.n:
        raise ConfigError(f"point has dimension {p.n} but base has {g.dim}")
    if not g.contains(p.x):
        raise ConfigError("point.x lies outside the chart domain")
    W = build_weights(cfg)
    quantity = quantity or cfg.get("quantity", "scalar")
    vec = cfg.get("vectors", {})
    n = p.n
    out = {"schema": SCHEMA_VERSION, "command": "eval", "quantity": quantity,
           "base": g.name, "weights": W.to_json(), "point": p.to_json()}
    geo = cf.PointGeometry(W, g, p)
    if quantity == "scalar":
        val = cf.scalar(W, g, p, geo=geo)
        out["value"] = val
        out["value_printed_formula"] = cf.scalar(W, g, p, geo=geo, printed=True)
        if with_oracle:
            ref = oracle.fd_scalar(oracle.ChartMetric(W, g), p.chart())
            out["oracle"] = ref
            out["difference"] = val - ref
    elif quantity == "gram":
        E = orthonormal_basis(geo.gx)
        basis = lifted_basis(n, E)
        mat = np.array([[natural_metric(W, g, p, A, B) for B in basis] for A in basis])
        out["value"] = mat
        out["pd_certificate"] = assert_pd(mat).to_json()
    elif quantity == "connection":
        kx, ky = _kinds(vec, 2)
        X = _vector(vec, "X", n)
        Y = AffineField(p.x, _vector(vec, "Y", n), vec.get("jacobian_Y"))
        LX, LY = cf.LiftedField.of(X, kx, p.x), cf.LiftedField(Y, ky)
        val = cf.connection(W, g, p, LX, LY, geo=geo)
        out["value"] = {"h": val.h, "v": val.v}
        if with_oracle:
            ref = oracle.oracle_connection(W, g, p, LX, LY)
            out["oracle"] = {"h": ref.h, "v": ref.v}
            out["difference"] = float(np.linalg.norm(val.flat() - ref.flat()))
    elif quantity == "curvature":
        kinds = _kinds(vec, 3)
        X, Y, Z = (_vector(vec, k, n) for k in "XYZ")
        args = [cf.LiftedField.of(V, k, p.x) for V, k in zip((X, Y, Z), kinds)]
        val = cf.curvature(W, g, p, *args, geo=geo)
        out["value"] = {"h": val.h, "v": val.v}
        if with_oracle:
            ref = oracle.oracle_curvature(W, g, p, *(_lift(V, k) for V, k in zip((X, Y, Z), kinds)))
            out["oracle"] = {"h": ref.h, "v": ref.v}
            out["difference"] = float(np.linalg.norm(val.flat() - ref.flat()))
    elif quantity == "sectional":
        X, Y = _vector(vec, "X", n), _vector(vec, "Y", n)
        tab = cf.sectional_table(W, g, p, X, Y, geo=geo)
        out["value"] = tab.to_json()
        if with_oracle:
            H, V = LMTangent.horizontal, LMTangent.vertical
            rm_bar = oracle.fd_riemann(oracle.ChartMetric(W, g), p.chart())
            ref = {
                "hh": oracle.oracle_sectional(W, g, p, H(X), H(Y), rm_bar),
                "hv": [oracle.oracle_sectional(W, g, p, H(X), V(Y, i), rm_bar) for i in range(n)],
                "vv": [oracle.oracle_sectional(W, g, p, V(X, i), V(Y, i), rm_bar) for i in range(n)],
            }
            out["oracle"] = ref
            out["difference"] = {
                "hh": tab.hh - ref["hh"],
                "hv": [a - b for a, b in zip(tab.hv, ref["hv"])],
                "vv": [a - b for a, b in zip(tab.vv, ref["vv"])],
            }
    else:
        raise ConfigError(f"quantity: unknown {quantity!r}")
    return out


def cmd_eval(args) -> int:
    cfg = load_config(args.config)
    _dump(run_eval(cfg, args.quantity, args.oracle, args.dim), args.out)
    return EXIT_OK


# -- sweep -------------------------------------------------------------------------

SWEEP_COLUMNS = [
    "preset", "n", "kappa", "t", "sum_alpha_t", "hypothesis",
    "K_hh", "K_hv_min", "K_vv_min", "K_min", "K_hh_positive", "nonnegative",
]

SWEEP_HEADER = [
    "# framecurv sweep (schema 1)",
    "# frame u = sqrt(t) I at x = 0 of space_form(n, kappa); plane X = e_1, Y = e_2",
    "# sum_alpha_t: sum_i alpha(t_i) t_i; hypothesis: kappa > 0 and sum_alpha_t < 4/(3 kappa)",
    "# K_hh = K(X^h,Y^h); K_hv_min = min_i K(X^h,Y^{v,i}); K_vv_min = min_i K(X^{v,i},Y^{v,i})",
    "# K_min: minimum of the three; K_hh_positive: K_hh > 0; nonnegative: K_min >= 0",
]


def sweep_rows(presets, kappas, ts, n):
    rows = []
    for preset in presets:
        W = weights_from_config({"preset": preset})
        for kappa in kappas:
            g = space_form(n, kappa)
            for t in ts:
                if t <= 0:
                    raise ConfigError(f"sweep.t: values must be > 0, got {t}")
                p = FramePoint(np.zeros(n), math.sqrt(t) * np.eye(n))
                geo = cf.PointGeometry(W, g, p)
                e = np.eye(n)
                tab = cf.sectional_table(W, g, p, e[0], e[1], geo=geo)
                kmin = min(tab.hh, min(tab.hv), min(tab.vv))
                rows.append({
                    "preset": preset, "n": n, "kappa": kappa, "t": t,
                    "sum_alpha_t": tab.positivity_sum,
                    "hypothesis": tab.positivity_hypothesis,
                    "K_hh": tab.hh, "K_hv_min": min(tab.hv), "K_vv_min": min(tab.vv),
                    "K_min": kmin, "K_hh_positive": tab.hh > 0, "nonnegative": kmin >= 0,
                })
    return rows


def format_csv(rows) -> str:
    buf = io.StringIO()
    for line in SWEEP_HEADER:
        buf.write(line + "\n")
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(float(v)) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    sw = cfg.get("sweep", {})
    n = args.dim or cfg.get("dim") or 2
    rows = sweep_rows(sw.get("presets", ["cheeger_gromoll"]), sw.get("kappa", []), sw.get("t", []), n)
    text = format_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- pd-check ----------------------------------------------------------------------


def random_spd(rng, m, jitter=1e-3):
    A = rng.normal(size=(m, m))
    return A @ A.T + jitter * np.eye(m)


def random_tm_gram(rng, n):
    """Random SPD ``2n x 2n`` matrix normalised to an identity upper-left block."""
    M = random_spd(rng, 2 * n)
    L = np.linalg.cholesky(M[:n, :n])
    T = np.eye(2 * n)
    T[:n, :n] = np.linalg.inv(L)
    G = T @ M @ T.T
    G[:n, :n] = np.eye(n)
    return 0.5 * (G + G.T)


def random_cbar(rng, n):
    M = random_spd(rng, n + 1)
    d = np.ones(n + 1)
    d[0] = 1.0 / math.sqrt(M[0, 0])
    M = M * np.outer(d, d)
    M[0, 0] = 1.0
    return M[0, 1:], M[1:, 1:]


def run_pdcheck(cfg, trials, seed, dims) -> dict:
    fixed = None
    if "general" in cfg:
        try:
            spec = GeneralMetricSpec.from_json(cfg["general"])
        except InvalidSpec as exc:
            raise ConfigError(f"general: {exc}") from exc
        fixed = (spec.c, spec.C)
        dims = [spec.c.size]
    failures, counterexamples = 0, []
    min_pivot = math.inf
    for n in dims:
        for k in range(trials):
            rng = np.random.default_rng([int(seed), int(n), int(k)])
            G = random_tm_gram(rng, n)
            c, C = fixed if fixed is not None else random_cbar(rng, n)
            cert = assert_pd(kron_block(G, c, C))
            min_pivot = min(min_pivot, cert.min_pivot)
            if not cert:
                failures += 1
                if len(counterexamples) < 5:
                    counterexamples.append({"n": n, "trial": k, "G": G, "c": c, "C": C,
                                            "failing_minor": cert.failing_minor})
    return {
        "schema": SCHEMA_VERSION, "command": "pd-check", "timestamp": _timestamp(),
        "dims": list(dims), "trials_per_dim": trials, "seed": seed,
        "failures": failures, "min_pivot": min_pivot, "counterexamples": counterexamples,
        "passed": failures == 0,
    }


def cmd_pdcheck(args) -> int:
    cfg = load_config(args.config)
    trials = args.samples or cfg.get("trials", 1000)
    dims = [args.dim] if args.dim else [cfg["dim"]] if "dim" in cfg else [2, 3]
    report = run_pdcheck(cfg, trials, _seed(args, cfg), dims)
    _dump(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_DISCREPANCY


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="framecurv", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="run configuration (JSON)")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--samples", type=int, default=None)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--dim", type=int, default=None)
        sp.add_argument("--tolerance", type=float, default=None)
        sp.add_argument("--oracle", action="store_true",
                        help="eval: also print the finite-difference value")

    sp = sub.add_parser("verify", help="closed forms vs the finite-difference oracle")
    common(sp)
    sp.add_argument("--strict-formulas", action="store_true",
                    help="exit 2 if any printed formula is refuted by the oracle")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("eval", help="evaluate a quantity at a frame")
    common(sp)
    sp.add_argument("--quantity", choices=["connection", "curvature", "sectional", "scalar", "gram"])
    sp.set_defaults(func=cmd_eval)
    sp = sub.add_parser("sweep", help="sectional-curvature positivity sweep (CSV)")
    common(sp)
    sp.set_defaults(func=cmd_sweep)
    sp = sub.add_parser("pd-check", help="randomised positive-definiteness check of the block metric")
    common(sp)
    sp.set_defaults(func=cmd_pdcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.dim is not None and args.dim < 2:
        sys.stderr.write("error: --dim must be >= 2\n")
        return EXIT_CONFIG
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        sys.stderr.write("error: --seed must be an unsigned 64-bit integer\n")
        return EXIT_CONFIG
    if args.samples is not None and args.samples < 1:
        sys.stderr.write("error: --samples must be >= 1\n")
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except FrameCurvError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
