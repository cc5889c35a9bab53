"""Time the numba kernels against their numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py``.  Both paths are loaded
from ``symred._kernels`` regardless of ``SYMRED_NUMBA``; results are
checked for agreement before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from symred import _kernels


def _timeit(fn, args, repeat):
    fn(*args)  # warm up (jit compile on first call)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rng):
    a = rng.normal(size=(24, 24))
    a = a + a.T
    mats = rng.normal(size=(400, 6, 6))
    mats = mats + mats.transpose(0, 2, 1)
    exps = rng.integers(0, 5, size=(60, 4)).astype(np.int64)
    coeffs = rng.normal(size=60)
    pts = rng.normal(size=(20000, 4))
    k, p = 10, 12
    basis = rng.normal(size=(p, k, k))
    basis = basis + basis.transpose(0, 2, 1)
    flat = basis.reshape(p, -1)
    gram_inv = np.linalg.inv(flat @ flat.T)
    q0 = np.eye(k) * 0.5 + 0.01 * (basis[0])
    return {
        "jacobi_eigenvalues": (a, 1e-12, 100),
        "min_eigenvalues": (mats, 1e-12, 100),
        "eval_polynomial": (coeffs, exps, pts),
        "alternating_projection": (q0, basis, gram_inv, 200, 1e-6),
    }


def _first(out):
    return out[0] if isinstance(out, tuple) else out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels.numba_kernels is None:
        print("numba is not installed; only the numpy path is available")
        return
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<24}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, inputs in cases(rng).items():
        f_np = _kernels.numpy_kernels[name]
        f_nb = _kernels.numba_kernels[name]
        r_np, r_nb = _first(f_np(*inputs)), _first(f_nb(*inputs))
        if not np.allclose(np.sort(np.ravel(r_np)), np.sort(np.ravel(r_nb)), atol=1e-8):
            raise SystemExit(f"{name}: numba and numpy results differ")
        t_np = _timeit(f_np, inputs, args.repeat)
        t_nb = _timeit(f_nb, inputs, args.repeat)
        print(f"{name:<24}{1e3 * t_np:>12.3f}{1e3 * t_nb:>12.3f}{t_np / t_nb:>10.1f}x")


if __name__ == "__main__":
    main()
