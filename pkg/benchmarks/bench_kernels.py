"""Compare the numba kernels with the pure-numpy fallback.

Run ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each row times both
backends on the same input, after one warm-up call that also checks they agree.
"""
import argparse
import time

import numpy as np

from abelrigid import kernels
from abelrigid.geometry import WeightedFigure
from abelrigid.oracle import candidate_vectors, search_windows_2d
from abelrigid.witness import StronglyLinearRule, render_window

HEXAGON = WeightedFigure.from_points(
    [(1, 0), (2, 0)] + [(x, 1) for x in range(6)] + [(x, 2) for x in range(1, 5)] + [(2, 3), (3, 3)])
TRIANGLE = WeightedFigure.from_points([(0, 0), (1, 0), (0, 1)])


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def kernel_cases(size):
    win = render_window(StronglyLinearRule((1, 0), 1), (0, 0), (size, size))
    offs = np.array([list(p) for p in HEXAGON.coords], dtype=np.int64)
    w = np.ones(len(offs), dtype=np.int64)
    vecs = np.array(candidate_vectors(16), dtype=np.int64)
    cells = win.cells
    yield ("combination_counts", lambda f: f(cells, offs, w, 2),
           kernels.combination_counts_py, kernels.combination_counts_jit)
    yield ("weighted_sums", lambda f: f(cells, offs, w),
           kernels.weighted_sums_py, kernels.weighted_sums_jit)
    yield ("period_mask", lambda f: f(cells, vecs),
           kernels.period_mask_py, kernels.period_mask_jit)


def search_case(repeat):
    def run():
        return search_windows_2d(TRIANGLE, 2, 6, 6)

    times = {}
    for disabled in (True, False):
        kernels.JIT_DISABLED = disabled
        run()
        times[disabled] = best_of(run, repeat)
    kernels.JIT_DISABLED = False
    return times[True], times[False]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=256, help="window side for the array kernels")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'kernel':<22}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>10}")
    for name, call, py, jit in kernel_cases(args.size):
        a, b = call(py), call(jit)
        assert np.array_equal(a, b), f"{name}: backends disagree"
        tp = best_of(lambda: call(py), args.repeat)
        tj = best_of(lambda: call(jit), args.repeat)
        print(f"{name:<22}{tp * 1e3:>12.2f}{tj * 1e3:>12.2f}{tp / tj:>10.1f}")
    tp, tj = search_case(max(1, args.repeat // 2))
    print(f"{'search 6x6 triangle':<22}{tp * 1e3:>12.2f}{tj * 1e3:>12.2f}{tp / tj:>10.1f}")


if __name__ == "__main__":
    main()
