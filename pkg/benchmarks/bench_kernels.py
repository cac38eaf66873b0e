"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 256,1024,2048] [--repeat 5]

Prints one line per (kernel, size) with the best wall time of each backend
and the speedup. Needs the extension built in place
(``python3 setup.py build_ext --inplace``).
"""
import argparse
import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "src"))

from polykit import _kernels  # noqa: E402
from polykit.coeffs import fft_coefficients  # noqa: E402
from polykit.fft import plan_for_size  # noqa: E402


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(n, rng):
    z = np.exp(2j * np.pi * (np.arange(n) + rng.random(n)) / n)
    a = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    size = 1 << (n - 1).bit_length()
    fp = plan_for_size(size)
    tw = np.ascontiguousarray(fp.twiddles)
    br = np.ascontiguousarray(fp.bitrev)
    x = rng.normal(size=size) + 1j * rng.normal(size=size)
    wts = rng.normal(size=n) + 0j
    pts = 1.1 * z
    poly = fft_coefficients(z)
    return {
        "products": lambda k: k.products(pts, z),
        "node_products": lambda k: k.node_products(z),
        "horner": lambda k: k.horner(a, pts),
        "fft_inplace": lambda k: k.fft_inplace(x.copy(), tw, br),
        "recursion_r": lambda k: k.recursion_r(z),
        "leja_permutation": lambda k: k.leja_permutation(z),
        "reduce_columns": lambda k: k.reduce_columns(poly, z[:64]),
        "cauchy_sum": lambda k: k.cauchy_sum(pts, z, wts),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="256,1024,2048")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    cy, py = _kernels.compiled_backend, _kernels.python_backend
    if cy is None:
        print("compiled extension not available; build it first", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    # plain recursion in natural order overflows for large n; only its time matters here
    np.seterr(over="ignore", invalid="ignore")
    print(f"{'kernel':<18}{'n':>6}{'cython [s]':>13}{'numpy [s]':>13}{'speedup':>9}")
    for n in (int(s) for s in args.sizes.split(",")):
        for name, run in cases(n, rng).items():
            tc = best_of(lambda: run(cy), args.repeat)
            tp = best_of(lambda: run(py), args.repeat)
            print(f"{name:<18}{n:>6}{tc:>13.2e}{tp:>13.2e}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
