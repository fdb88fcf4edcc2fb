"""Benchmark the compiled linking kernel against the pure numpy twin.

Usage: python benchmarks/bench_linking.py [--resolutions 4,5,6,7]

Times the full linking-number evaluation of the (2, 0) torus fibers at a
range of grid resolutions on both backends and reports the speedup and the
agreement of the estimates.
"""

import argparse
import time

import emb7.linking as lk


def time_backend(backend, resolution, separation):
    emb = lk.tau_embedding(2, 0)
    x, y = emb.fiber(+1), emb.fiber(-1)
    start = time.perf_counter()
    res = lk.linking_number(x, y, resolution=resolution, backend=backend,
                            separation=separation, require_convergence=False)
    return time.perf_counter() - start, res.estimate


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--resolutions", default="4,5,6,7")
    args = parser.parse_args()
    resolutions = [int(x) for x in args.resolutions.split(",")]

    if not lk.HAVE_COMPILED:
        print("compiled kernel not built; showing the numpy backend only")
    sep = lk.tau_fiber_separation(2)

    header = f"{'n':>3} {'nodes/cycle':>12} {'numpy [s]':>10}"
    if lk.HAVE_COMPILED:
        header += f" {'compiled [s]':>13} {'speedup':>8} {'|delta|':>9}"
    print(header)
    for n in resolutions:
        nodes = 4 * n ** 3
        t_py, est_py = time_backend("python", n, sep)
        line = f"{n:>3} {nodes:>12} {t_py:>10.3f}"
        if lk.HAVE_COMPILED:
            t_c, est_c = time_backend("compiled", n, sep)
            line += (f" {t_c:>13.3f} {t_py / t_c:>7.1f}x"
                     f" {abs(est_py - est_c):>9.1e}")
        print(line)


if __name__ == "__main__":
    main()
