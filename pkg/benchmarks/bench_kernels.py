"""Time the hot kernels under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--n 17]

Each case is run once per backend to warm up (numba compiles on first call),
then timed ``--repeat`` times; the median is reported together with the
largest difference between the two backends' outputs.
"""
import argparse
import statistics
import time

import numpy as np

from mkzgs import _backend, kernels, quadrature
from mkzgs import _scalar as S
from mkzgs.basis import TruncationPolicy
from mkzgs.functions import get_function
from mkzgs.interp import ChebInterpolant, lobatto_nodes


def _cases(n):
    trunc = TruncationPolicy()
    x = np.linspace(0.0, 1.0 - 2.0 ** -10, 257)
    z = x / (1.0 - x)
    sin = get_function("sin")
    coeffs = np.ascontiguousarray(sin.eval(np.arange(400_000) / (np.arange(400_000) + n)))
    los, his = kernels.windows(n + 1, z, 2, trunc.tail_tol, trunc.max_terms)
    interp = ChebInterpolant(sin.eval(lobatto_nodes(513, 1.0 - 2.0 ** -10)), 1.0 - 2.0 ** -10)
    dense = np.linspace(0.0, 1.0 - 2.0 ** -10, 20_000)

    def coeff_run():
        quadrature.clear_cache()
        return quadrature.u_coefficients(n, sin, 20_000)

    return {
        "windows (257 points)": lambda: np.concatenate(
            kernels.windows(n + 1, z, 2, trunc.tail_tol, trunc.max_terms)).astype(float),
        "series P~ (257 points)": lambda: kernels.series(S.UNIT_PT, n, x, coeffs, los, his),
        "u-coefficients k<=20000": coeff_run,
        "barycentric (20000 points)": lambda: interp(dense),
    }


def _time(fn, repeat):
    fn()
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        ts.append(time.perf_counter() - t0)
    return statistics.median(ts), np.asarray(out, dtype=float)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=17)
    args = ap.parse_args()
    if not _backend.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    cases = _cases(args.n)
    print(f"{'kernel':28s} {'numba [s]':>11s} {'numpy [s]':>11s} {'speedup':>8s} {'max diff':>10s}")
    for name, fn in cases.items():
        res = {}
        for backend in ("numba", "numpy"):
            _backend.set_backend(backend)
            res[backend] = _time(fn, args.repeat)
        (tn, on), (tp, op) = res["numba"], res["numpy"]
        diff = float(np.max(np.abs(on - op))) if on.size else 0.0
        print(f"{name:28s} {tn:11.4g} {tp:11.4g} {tp / tn:8.1f} {diff:10.2e}")
    _backend.set_backend("numba")


if __name__ == "__main__":
    main()
