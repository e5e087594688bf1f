"""Timing comparison of the compiled and pure-Python kernels.

Runs the three hot kernels (swap spectrum, purify scan, elementary
symmetric polynomials) on identical seeded inputs through both
implementations and prints per-call times with the speedup factor.

Usage: python benchmarks/bench_backends.py [--dims 2,3,4,6,8] [--reps 2000]
"""

import argparse
import importlib
import statistics
import sys
import time

import numpy as np


def _load_backends():
    import qnetdet._kernels_py as py_impl

    impls = [("py", py_impl)]
    try:
        c_impl = importlib.import_module("qnetdet._kernels_c")
        impls.insert(0, ("c", c_impl))
    except ImportError:
        print("compiled extension not built; timing the pure-Python kernels only\n")
    return impls


def _inputs(d, rng):
    x = np.sort(rng.dirichlet(np.ones(d)))[::-1].tolist()
    y = np.sort(rng.dirichlet(np.ones(d)))[::-1].tolist()
    m = np.sort(rng.dirichlet(np.ones(d * d)))[::-1].tolist()
    return x, y, m


def _time(fn, reps):
    # one warmup call, then per-call median over five batches
    fn()
    batches = []
    per = max(1, reps // 5)
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(per):
            fn()
        batches.append((time.perf_counter() - t0) / per)
    return statistics.median(batches)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default="2,3,4,6,8")
    ap.add_argument("--reps", type=int, default=2000)
    args = ap.parse_args(argv)
    dims = [int(v) for v in args.dims.split(",")]
    impls = _load_backends()
    rng = np.random.default_rng(0)

    print(f"{'kernel':<10} {'d':>2} " + " ".join(f"{name + ' (us)':>12}" for name, _ in impls)
          + ("  speedup" if len(impls) == 2 else ""))
    for d in dims:
        x, y, m = _inputs(d, rng)
        cases = [
            ("swap", lambda impl: (lambda: impl.swap_eig(x, y))),
            ("purify", lambda impl: (lambda: impl.purify_kernel(m, d))),
            ("esym", lambda impl: (lambda: impl.esym(x, d))),
        ]
        for label, make in cases:
            times = [_time(make(impl), args.reps) for _, impl in impls]
            row = f"{label:<10} {d:>2} " + " ".join(f"{t * 1e6:>12.2f}" for t in times)
            if len(times) == 2:
                row += f"  {times[1] / times[0]:>7.2f}x"
            print(row)
    # cross-checking outputs keeps the comparison honest
    if len(impls) == 2:
        for d in dims:
            x, y, m = _inputs(d, rng)
            a = impls[0][1].swap_eig(x, y)
            b = impls[1][1].swap_eig(x, y)
            worst = max(abs(u - v) for u, v in zip(a, b))
            if worst > 1e-12:
                print(f"backend outputs disagree at d={d}: {worst:g}", file=sys.stderr)
                return 1
        print("\nbackend outputs agree to 1e-12 on all benchmarked sizes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
