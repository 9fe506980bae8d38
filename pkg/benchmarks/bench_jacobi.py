"""Time the numba and numpy Jacobi backends on gasket Laplacians.

Usage: python benchmarks/bench_jacobi.py [--levels 3 4 5] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from sggap.oracle import build_graph, jacobi_diagonalize, laplacian_matrix
from sggap.oracle.jacobi import HAVE_NUMBA


def _time(a, use_numba, repeat):
    best, sweeps = float("inf"), 0
    for _ in range(repeat):
        t = time.perf_counter()
        d, sweeps = jacobi_diagonalize(a, use_numba=use_numba)
        best = min(best, time.perf_counter() - t)
    return best, sweeps, np.sort(np.diag(d))


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--levels", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--bc", default="neumann")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = [False] + ([True] if HAVE_NUMBA else [])
    if HAVE_NUMBA:
        # compile outside the timed region
        jacobi_diagonalize(np.eye(3) + 0.1, use_numba=True)
    print(f"{'level':>5} {'n':>5} {'backend':>8} {'sweeps':>6} {'seconds':>9} {'max |diff|':>11}")
    for m in args.levels:
        a = laplacian_matrix(build_graph(m), args.bc)
        ref = np.linalg.eigvalsh(a)
        for use in backends:
            secs, sweeps, ev = _time(a, use, args.repeat)
            name = "numba" if use else "numpy"
            err = np.abs(ev - ref).max()
            print(f"{m:>5} {len(a):>5} {name:>8} {sweeps:>6} {secs:>9.3f} {err:>11.2e}")


if __name__ == "__main__":
    main()
