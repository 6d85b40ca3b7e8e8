"""Tests for the backend-dispatched chunk-statistics kernels."""

import numpy as np
import pytest

import rdl
from rdl import kernels
from rdl.errors import InvalidParams


@pytest.fixture
def restore_backend():
    previous = kernels.active_backend()
    yield
    kernels.set_backend(previous)


def _workload(n=20_000, seed=9):
    gen = np.random.default_rng(seed)
    w = gen.standard_normal((n, 6))
    params = rdl.SystemParams(1.0, 8.0, 0.05, 1.0)
    transform = rdl.joint_transform(params, 0.8, 2.5)
    return w, transform


def test_backend_listing():
    assert kernels.active_backend() in ("numba", "numpy")
    with pytest.raises(InvalidParams):
        kernels.set_backend("fortran")


def test_env_variable_selects_backend(restore_backend, monkeypatch):
    monkeypatch.setenv("RDL_BACKEND", "numpy")
    assert kernels.set_backend(None) == "numpy"
    monkeypatch.delenv("RDL_BACKEND")
    kernels.set_backend(None)
    assert kernels.active_backend() in ("numba", "numpy")


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
def test_backends_agree(restore_backend):
    w, transform = _workload()
    results = {}
    for name in ("numpy", "numba"):
        kernels.set_backend(name)
        results[name] = kernels.chunk_stats(w, transform, -0.11, 0.02, 0.015, 0.014)
    for a, b in zip(results["numpy"], results["numba"]):
        assert np.allclose(a, b, rtol=1e-10, atol=1e-9)


def test_kernel_matches_direct_computation():
    w, transform = _workload(n=5_000)
    cy1, cu1, cy2, cu2 = -0.11, 0.02, 0.015, 0.014
    sums, gram, errstats = kernels.chunk_stats(w, transform, cy1, cu1, cy2, cu2)
    cols = w @ transform.T
    assert np.allclose(sums, cols.sum(axis=0), rtol=1e-12, atol=1e-9)
    assert np.allclose(gram, cols.T @ cols, rtol=1e-12, atol=1e-9)
    e1 = (cols[:, 0] - cy1 * cols[:, 2] - cu1 * cols[:, 5]) ** 2
    e2 = (cols[:, 1] - cy2 * cols[:, 3] - cu2 * cols[:, 4]) ** 2
    expected = [e1.sum(), (e1 * e1).sum(), e2.sum(), (e2 * e2).sum()]
    assert np.allclose(errstats, expected, rtol=1e-12, atol=1e-9)


def test_kernel_deterministic_per_backend():
    w, transform = _workload(n=3_000)
    first = kernels.chunk_stats(w, transform, 0.1, 0.2, 0.3, 0.4)
    second = kernels.chunk_stats(w, transform, 0.1, 0.2, 0.3, 0.4)
    for a, b in zip(first, second):
        assert a.tobytes() == b.tobytes()


def test_gram_is_symmetric():
    w, transform = _workload(n=2_000)
    _, gram, _ = kernels.chunk_stats(w, transform, 0.0, 0.0, 0.0, 0.0)
    assert np.array_equal(gram, gram.T)
