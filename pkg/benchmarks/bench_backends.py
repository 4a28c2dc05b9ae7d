#!/usr/bin/env python3
"""Benchmark: compiled kernel vs numpy fallback.

Times the two hot kernels (Hermitian eigendecomposition, projection
feasibility loop) and the end-to-end multiplier-norm computation on both
backends.  Run from the repository root:

    python benchmarks/bench_backends.py
"""
import time
from contextlib import contextmanager

import numpy as np

from schurmult import _backend, _fallback, multiplier_norm

try:
    from schurmult import _core
except ImportError:
    _core = None


@contextmanager
def use_kernels(mod):
    saved = (_backend.eigh, _backend.feasibility_loop, _backend.NAME)
    _backend.eigh = mod.eigh
    _backend.feasibility_loop = mod.feasibility_loop
    _backend.NAME = mod.NAME
    try:
        yield
    finally:
        _backend.eigh, _backend.feasibility_loop, _backend.NAME = saved


def bench(label, fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    print(f"  {label:<42s} {best * 1000:10.2f} ms")
    return best


def random_hermitian(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (m + m.conj().T) / 2


def main():
    if _core is None:
        print("compiled kernel not built; run `python setup.py build_ext --inplace`")
        backends = [_fallback]
    else:
        backends = [_core, _fallback]

    rng = np.random.default_rng(0)
    herms = {n: [random_hermitian(rng, n) for _ in range(200)] for n in (4, 8, 16)}
    xs = [rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
          for _ in range(10)]
    psd = []
    for _ in range(10):
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        psd.append(a @ a.conj().T)

    for mod in backends:
        print(f"backend: {mod.NAME}")
        for n, batch in herms.items():
            bench(f"eigh, 200 matrices of size {n}",
                  lambda batch=batch: [mod.eigh(h) for h in batch])
        x = xs[0]
        t_feas = float(np.max(np.linalg.norm(x, axis=0))) * 1.2
        bench("feasibility loop (3x3, feasible t)",
              lambda: mod.feasibility_loop(x, t_feas, None, "dr", 5000,
                                           1e-10, 200, 1e-12))
        t_tight = float(np.max(np.abs(x))) * 1.02
        bench("feasibility loop (3x3, near-boundary t)",
              lambda: mod.feasibility_loop(x, t_tight, None, "dr", 5000,
                                           1e-10, 200, 1e-12))
        with use_kernels(mod):
            bench("multiplier_norm, 10 random 3x3, eps 1e-3",
                  lambda: [multiplier_norm(m, 1e-3) for m in xs], repeats=1)
            bench("multiplier_norm, 10 PSD 5x5, eps 1e-5",
                  lambda: [multiplier_norm(m, 1e-5) for m in psd], repeats=1)
        print()


if __name__ == "__main__":
    main()
