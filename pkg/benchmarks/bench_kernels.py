"""Timing comparison between the compiled kernels and the numpy fallback.

Run as a script:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from lcrit import kernels
from lcrit.kernels import fallback


def _time(fn, *args, repeats=5, inner=20):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def bench_dirichlet_sum(sizes=(10**3, 10**4, 10**5, 10**6)):
    rng = np.random.default_rng(0)
    s = 1.5 + 30.0j
    print("dirichlet_sum (coeff * n^-s over n up to N)")
    print(f"{'N':>9}  {'compiled':>12}  {'numpy':>12}  {'speedup':>8}")
    for n in sizes:
        logn = np.log(np.arange(2, n + 2, dtype=np.float64))
        coeff = (rng.standard_normal(n) + 1j * rng.standard_normal(n)).astype(np.complex128)
        tc = _time(kernels.dirichlet_sum, logn, coeff, s)
        tf = _time(fallback.dirichlet_sum, logn, coeff, s)
        vc = kernels.dirichlet_sum(logn, coeff, s)
        vf = fallback.dirichlet_sum(logn, coeff, s)
        assert abs(vc - vf) <= 1e-9 * (1 + abs(vc)), (vc, vf)
        print(f"{n:>9}  {tc * 1e6:>10.1f}us  {tf * 1e6:>10.1f}us  {tf / tc:>7.2f}x")


def bench_hurwitz_main_sum(sizes=(10**2, 10**3, 10**4, 10**5)):
    s = 2.0 + 15.0j
    print()
    print("hurwitz_main_sum (log-weighted (n+a)^-s partial sums, deriv 0..2)")
    print(f"{'N':>9}  {'deriv':>5}  {'compiled':>12}  {'numpy':>12}  {'speedup':>8}")
    for n in sizes:
        for deriv in (0, 1, 2):
            tc = _time(kernels.hurwitz_main_sum, 0.4, n, s, deriv)
            tf = _time(fallback.hurwitz_main_sum, 0.4, n, s, deriv)
            vc = kernels.hurwitz_main_sum(0.4, n, s, deriv)
            vf = fallback.hurwitz_main_sum(0.4, n, s, deriv)
            assert abs(vc - vf) <= 1e-9 * (1 + abs(vc)), (vc, vf)
            print(f"{n:>9}  {deriv:>5}  {tc * 1e6:>10.1f}us  {tf * 1e6:>10.1f}us  {tf / tc:>7.2f}x")


def main():
    print(f"active backend: {kernels.BACKEND}")
    if kernels.BACKEND == "numpy":
        print("compiled extension not built; comparing fallback against itself")
    bench_dirichlet_sum()
    bench_hurwitz_main_sum()


if __name__ == "__main__":
    main()
