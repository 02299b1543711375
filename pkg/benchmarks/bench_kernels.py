"""Compare the compiled and numpy kernel backends on random inputs.

    python3 benchmarks/bench_kernels.py --dim 3 --repeat 2000
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from framecurv import _kernels_py

try:
    from framecurv import _kernels_c
except ImportError:
    _kernels_c = None


def make_inputs(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n))
    g = A @ A.T + n * np.eye(n)
    ginv = np.linalg.inv(g)
    dg = rng.normal(size=(n, n, n))
    dg = 0.5 * (dg + dg.transpose(0, 2, 1))
    d2g = rng.normal(size=(n, n, n, n))
    d2g = 0.5 * (d2g + d2g.transpose(1, 0, 2, 3))
    d2g = 0.5 * (d2g + d2g.transpose(0, 1, 3, 2))
    gam = _kernels_py.christoffel_from_derivs(ginv, dg)
    u = rng.normal(size=(n, n)) + 2 * np.eye(n)
    alpha, beta = rng.uniform(0.5, 1.5, n), rng.uniform(0.0, 1.0, n)
    M = _kernels_py.natural_chart_metric(g, gam, u, alpha, beta)
    return {
        "christoffel_from_derivs": (ginv, dg),
        "curvature_from_derivs": (ginv, dg, d2g),
        "natural_chart_metric": (g, gam, u, alpha, beta),
        "cholesky_pivots": (M,),
    }


def max_diff(a, b):
    if isinstance(a, tuple):
        return max(max_diff(x, y) for x, y in zip(a, b))
    return float(np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))))


END_TO_END = """
import time
from framecurv import kernels, oracle
from framecurv.base_manifold import space_form
from framecurv.metrics import cheeger_gromoll
t0 = time.perf_counter()
oracle.compare_curvature(cheeger_gromoll(), space_form({n}, 1.0), samples={samples}, seed=0)
print(kernels.BACKEND, time.perf_counter() - t0)
"""


def end_to_end(n, samples):
    """Wall time of an oracle curvature comparison under each backend (fresh interpreter)."""
    out = {}
    for pure in ("1", "0"):
        env = dict(os.environ, FRAMECURV_PURE_PYTHON=pure)
        res = subprocess.run([sys.executable, "-c", END_TO_END.format(n=n, samples=samples)],
                             env=env, capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        out[backend] = float(secs)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", type=int, default=0, metavar="SAMPLES",
                    help="also time compare_curvature with this many samples")
    args = ap.parse_args()
    inputs = make_inputs(args.dim, args.seed)
    rows = []
    for name, call_args in inputs.items():
        py = getattr(_kernels_py, name)
        t_py = min(timeit.repeat(lambda: py(*call_args), number=args.repeat, repeat=3)) / args.repeat
        row = {"kernel": name, "n": args.dim, "python_us": 1e6 * t_py}
        if _kernels_c is not None:
            c = getattr(_kernels_c, name)
            t_c = min(timeit.repeat(lambda: c(*call_args), number=args.repeat, repeat=3)) / args.repeat
            row.update(cython_us=1e6 * t_c, speedup=t_py / t_c,
                       max_abs_diff=max_diff(py(*call_args), c(*call_args)))
        rows.append(row)
        print(json.dumps(row))
    if args.end_to_end:
        times = end_to_end(args.dim, args.end_to_end)
        print(json.dumps({"end_to_end": "compare_curvature", "n": args.dim,
                          "samples": args.end_to_end, **{f"{k}_s": v for k, v in times.items()}}))


if __name__ == "__main__":
    main()
