"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import timeit

import numpy as np

from lroof._kernels import _pykernels

try:
    from lroof._kernels import _cykernels
except ImportError:
    _cykernels = None


def _time(fn, number):
    return timeit.timeit(fn, number=number) / number


def bench_eigh(kern, d, rng, number):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    a = (a + a.conj().T) / 2.0
    return _time(lambda: kern.eigh_jacobi(a), number)


def bench_qr(kern, n, rng, number):
    a = rng.standard_normal((n, n))
    return _time(lambda: kern.real_eigenvalues(a), number)


def bench_scan(kern, m, ndirs, rng, number):
    j = np.diag([1.0] + [-1.0] * (m - 1))
    q = rng.standard_normal((m, m))
    p = q @ q.T + 2.0 * j
    x = np.concatenate(([1.0], 0.3 * rng.standard_normal(m - 1) / np.sqrt(m)))
    dirs = rng.standard_normal((ndirs, m))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    return _time(lambda: kern.two_point_scan(p, j, x, dirs), number)


CASES = [
    ("eigh_jacobi d=8", lambda k, rng, n: bench_eigh(k, 8, rng, n), 200),
    ("eigh_jacobi d=16", lambda k, rng, n: bench_eigh(k, 16, rng, n), 50),
    ("real_eigenvalues n=4", lambda k, rng, n: bench_qr(k, 4, rng, n), 2000),
    ("real_eigenvalues n=16", lambda k, rng, n: bench_qr(k, 16, rng, n), 200),
    ("two_point_scan m=6 x 10k", lambda k, rng, n: bench_scan(k, 6, 10_000, rng, n), 20),
]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=1)
    args = parser.parse_args()
    print(f"{'case':28s} {'python':>12s} {'cython':>12s} {'speedup':>9s}")
    for name, fn, number in CASES:
        rng = np.random.default_rng(0)
        t_py = min(fn(_pykernels, rng, number) for _ in range(args.repeats))
        if _cykernels is None:
            print(f"{name:28s} {t_py * 1e3:10.3f}ms {'n/a':>12s} {'n/a':>9s}")
            continue
        rng = np.random.default_rng(0)
        t_cy = min(fn(_cykernels, rng, number) for _ in range(args.repeats))
        print(f"{name:28s} {t_py * 1e3:10.3f}ms {t_cy * 1e3:10.3f}ms {t_py / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
