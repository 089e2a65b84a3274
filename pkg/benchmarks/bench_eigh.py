"""Benchmark the compiled eigensolver kernels against the pure-numpy
fallback.

Usage::

    python3 benchmarks/bench_eigh.py [--sizes 30,60,100,150] [--repeat 5]

Both backends run the same Householder + implicit-shift QL algorithm; the
benchmark reports wall time per full decomposition and the maximum eigenvalue
disagreement between the two.
"""

import argparse
import time

import numpy as np

from specorder import backend
from specorder import _pykernels


def decompose(kernels, a):
    z = a.copy()
    n = a.shape[0]
    d = np.empty(n)
    e = np.empty(n)
    kernels.tridiagonalize(z, d, e)
    status = kernels.ql_implicit(d, e, z, 50)
    if status != 0:
        raise RuntimeError(f"QL non-convergence at index {status - 1}")
    order = np.argsort(d, kind="stable")
    return d[order], z[:, order]


def time_backend(kernels, matrices, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a in matrices:
            decompose(kernels, a)
        best = min(best, time.perf_counter() - t0)
    return best / len(matrices)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="30,60,100,150")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--matrices", type=int, default=8, help="matrices per size")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    try:
        from specorder import _ckernels
        compiled = _ckernels
    except ImportError:
        compiled = None

    print(f"active package backend: {backend.BACKEND}")
    if compiled is None:
        print("compiled kernels unavailable; timing the python fallback only")
    header = f"{'n':>5} {'python (ms)':>12}"
    if compiled is not None:
        header += f" {'compiled (ms)':>14} {'speedup':>8} {'max |dw|':>10}"
    print(header)

    rng = np.random.default_rng(20240820)
    for n in sizes:
        matrices = []
        for _ in range(args.matrices):
            a = rng.standard_normal((n, n))
            matrices.append(np.ascontiguousarray((a + a.T) / 2.0))
        t_py = time_backend(_pykernels, matrices, args.repeat)
        line = f"{n:>5} {t_py * 1e3:>12.3f}"
        if compiled is not None:
            t_c = time_backend(compiled, matrices, args.repeat)
            dw = 0.0
            for a in matrices:
                w1, _ = decompose(_pykernels, a)
                w2, _ = decompose(compiled, a)
                dw = max(dw, float(np.max(np.abs(w1 - w2))))
            line += f" {t_c * 1e3:>14.3f} {t_py / t_c:>8.1f} {dw:>10.2e}"
        print(line)


if __name__ == "__main__":
    main()
