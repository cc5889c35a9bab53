import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symred import _kernels

BACKENDS = [_kernels.numpy_kernels] + ([_kernels.numba_kernels] if _kernels.numba_kernels else [])


@pytest.mark.parametrize("k", BACKENDS, ids=lambda k: "numba" if k is _kernels.numba_kernels else "numpy")
@given(st.integers(1, 12), st.integers(0, 10**6))
@settings(max_examples=20)
def test_jacobi_vs_eigvalsh(k, n, seed):
    a = np.random.default_rng(seed).normal(size=(n, n))
    a = a + a.T
    w, sweeps = k["jacobi_eigenvalues"](a, 1e-13, 100)
    assert sweeps >= 0
    assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-9)


@pytest.mark.parametrize("k", BACKENDS)
def test_min_eigenvalues(k):
    mats = np.random.default_rng(0).normal(size=(20, 4, 4))
    mats = mats + mats.transpose(0, 2, 1)
    got = k["min_eigenvalues"](mats, 1e-13, 100)
    assert np.allclose(got, np.linalg.eigvalsh(mats)[:, 0], atol=1e-9)


@pytest.mark.parametrize("k", BACKENDS)
def test_eval_polynomial(k):
    rng = np.random.default_rng(1)
    exps = rng.integers(0, 4, size=(10, 3)).astype(np.int64)
    coeffs = rng.normal(size=10)
    pts = rng.normal(size=(50, 3))
    want = np.array([sum(c * np.prod(p ** e) for c, e in zip(coeffs, exps)) for p in pts])
    assert np.allclose(k["eval_polynomial"](coeffs, exps, pts), want)


def test_backends_agree_on_projection():
    if _kernels.numba_kernels is None:
        pytest.skip("numba not installed")
    rng = np.random.default_rng(2)
    p, n = 4, 5
    basis = rng.normal(size=(p, n, n))
    basis = basis + basis.transpose(0, 2, 1)
    flat = basis.reshape(p, -1)
    gi = np.linalg.inv(flat @ flat.T)
    q0 = np.eye(n) + 0.1 * basis[0]
    a = _kernels.numpy_kernels["alternating_projection"](q0, basis, gi, 50, 1e-6)
    b = _kernels.numba_kernels["alternating_projection"](q0, basis, gi, 50, 1e-6)
    assert np.allclose(a[0], b[0], atol=1e-8) and a[3] == b[3]


def test_fallback_switch(monkeypatch):
    import importlib

    monkeypatch.setenv("SYMRED_NUMBA", "0")
    mod = importlib.reload(_kernels)
    try:
        assert not mod.USE_NUMBA
        assert mod.jacobi_eigenvalues is mod.numpy_kernels["jacobi_eigenvalues"]
    finally:
        monkeypatch.delenv("SYMRED_NUMBA")
        importlib.reload(_kernels)
