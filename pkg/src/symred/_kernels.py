"""Numeric hot loops with a numba path and a pure numpy path.

The numba versions are used by default.  Set ``SYMRED_NUMBA=0`` in the
environment before import to force the numpy versions (useful for
debugging and for the benchmark in ``benchmarks/bench_kernels.py``).
Both paths expose the same four functions:

* ``jacobi_eigenvalues(a, tol, max_sweeps)``
* ``min_eigenvalues(mats, tol, max_sweeps)``
* ``eval_polynomial(coeffs, exps, points)``
* ``alternating_projection(q0, basis, gram_inv, max_iter, eps)``
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - depends on the environment
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and os.environ.get("SYMRED_NUMBA", "1") != "0"


# ---------------------------------------------------------------------------
# numpy implementations


def _np_jacobi_eigenvalues(a, tol, max_sweeps):
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    scale = max(np.abs(a).max(), 1.0) if n else 1.0
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum((a - np.diag(np.diag(a))) ** 2))
        if off <= tol * scale:
            return np.sort(np.diag(a)), sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    return np.sort(np.diag(a)), -1


def _np_min_eigenvalues(mats, tol, max_sweeps):
    mats = np.asarray(mats, dtype=np.float64)
    if mats.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(mats)[:, 0]


def _np_eval_polynomial(coeffs, exps, points):
    points = np.asarray(points, dtype=np.float64)
    mons = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
    return mons @ coeffs


def _np_alternating_projection(q0, basis, gram_inv, max_iter, eps):
    p = basis.shape[0]
    t = np.zeros(p)
    a = q0.copy()
    gap = np.zeros_like(q0)
    lam = -np.inf
    it = 0
    for it in range(1, max_iter + 1):
        a = q0 + np.tensordot(t, basis, axes=1)
        w, v = np.linalg.eigh(a)
        lam = w[0]
        if lam >= eps:
            gap[:] = 0.0
            break
        proj = (v * np.maximum(w, 2.0 * eps)) @ v.T
        gap = proj - a
        rhs = np.tensordot(basis, proj - q0, axes=([1, 2], [0, 1]))
        t = gram_inv @ rhs
    return t, lam, gap, it


# ---------------------------------------------------------------------------
# numba implementations (loop style so that the jit can fuse them)


def _nb_jacobi_core(a, tol, max_sweeps):
    n = a.shape[0]
    scale = 1.0
    for i in range(n):
        for j in range(n):
            if abs(a[i, j]) > scale:
                scale = abs(a[i, j])
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if np.sqrt(off) <= tol * scale:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = c * akp - s * akq
                    a[q, k] = s * akp + c * akq
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
    return -1


def _nb_jacobi_eigenvalues(a, tol, max_sweeps):
    b = a.astype(np.float64).copy()
    sweeps = _nb_jacobi_core(b, tol, max_sweeps)
    return np.sort(np.diag(b).copy()), sweeps


def _nb_min_eigenvalues(mats, tol, max_sweeps):
    m = mats.shape[0]
    out = np.empty(m)
    for i in range(m):
        b = mats[i].astype(np.float64).copy()
        _nb_jacobi_core(b, tol, max_sweeps)
        out[i] = np.min(np.diag(b))
    return out


def _nb_eval_polynomial(coeffs, exps, points):
    npts = points.shape[0]
    nterms = exps.shape[0]
    nv = exps.shape[1]
    out = np.zeros(npts)
    for i in range(npts):
        acc = 0.0
        for k in range(nterms):
            m = coeffs[k]
            for j in range(nv):
                e = exps[k, j]
                if e:
                    m *= points[i, j] ** e
            acc += m
        out[i] = acc
    return out


def _nb_alternating_projection(q0, basis, gram_inv, max_iter, eps):
    p = basis.shape[0]
    k = q0.shape[0]
    t = np.zeros(p)
    gap = np.zeros((k, k))
    lam = -np.inf
    it = 0
    for it in range(1, max_iter + 1):
        a = q0.copy()
        for i in range(p):
            a += t[i] * basis[i]
        w, v = np.linalg.eigh(a)
        lam = w[0]
        if lam >= eps:
            gap[:, :] = 0.0
            break
        proj = np.zeros((k, k))
        for j in range(k):
            wj = max(w[j], 2.0 * eps)
            for r in range(k):
                for c in range(k):
                    proj[r, c] += wj * v[r, j] * v[c, j]
        gap = proj - a
        rhs = np.zeros(p)
        for i in range(p):
            rhs[i] = np.sum(basis[i] * (proj - q0))
        t = gram_inv @ rhs
    return t, lam, gap, it


numpy_kernels = {
    "jacobi_eigenvalues": _np_jacobi_eigenvalues,
    "min_eigenvalues": _np_min_eigenvalues,
    "eval_polynomial": _np_eval_polynomial,
    "alternating_projection": _np_alternating_projection,
}

numba_kernels = None
if _HAVE_NUMBA:
    # njit is lazy, so building these costs nothing until first call
    _nb_jacobi_core = njit(cache=True)(_nb_jacobi_core)
    numba_kernels = {
        "jacobi_eigenvalues": njit(cache=True)(_nb_jacobi_eigenvalues),
        "min_eigenvalues": njit(cache=True)(_nb_min_eigenvalues),
        "eval_polynomial": njit(cache=True)(_nb_eval_polynomial),
        "alternating_projection": njit(cache=True)(_nb_alternating_projection),
    }

_active = numba_kernels if USE_NUMBA else numpy_kernels
jacobi_eigenvalues = _active["jacobi_eigenvalues"]
min_eigenvalues = _active["min_eigenvalues"]
eval_polynomial = _active["eval_polynomial"]
alternating_projection = _active["alternating_projection"]
