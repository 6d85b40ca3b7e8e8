"""Hot per-chunk statistics kernels for the Monte Carlo simulator.

The simulator spends essentially all of its time turning a chunk of
standard-normal drivers into joint samples and reducing them to running
statistics.  Two interchangeable implementations are provided:

* ``numba`` — a fused ``@njit`` loop (single pass, no temporaries); the
  default whenever numba imports.
* ``numpy`` — the same computation composed from vectorized numpy ops.

Selection: the environment variable ``RDL_BACKEND`` (``numba`` or
``numpy``) is read at import; :func:`set_backend` overrides it at runtime.
A backend is deterministic against itself (same inputs, same bytes); the
two backends agree to floating-point reduction-order differences
(~1e-12 relative), which is far below every statistical tolerance used
downstream.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import InvalidParams

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on numba-less installs
    HAVE_NUMBA = False


def _chunk_stats_numpy(w, transform, cy1, cu1, cy2, cu2):
    cols = w @ transform.T
    sums = cols.sum(axis=0)
    gram = cols.T @ cols
    e1 = (cols[:, 0] - cy1 * cols[:, 2] - cu1 * cols[:, 5]) ** 2
    e2 = (cols[:, 1] - cy2 * cols[:, 3] - cu2 * cols[:, 4]) ** 2
    errstats = np.array([e1.sum(), (e1 * e1).sum(), e2.sum(), (e2 * e2).sum()])
    return sums, gram, errstats


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _chunk_stats_numba(w, transform, cy1, cu1, cy2, cu2):  # pragma: no cover - jitted
        m = w.shape[0]
        sums = np.zeros(6)
        gram = np.zeros((6, 6))
        errstats = np.zeros(4)
        row = np.empty(6)
        for i in range(m):
            for j in range(6):
                acc = 0.0
                for k in range(6):
                    acc += w[i, k] * transform[j, k]
                row[j] = acc
            for j in range(6):
                sums[j] += row[j]
                for k in range(j, 6):
                    gram[j, k] += row[j] * row[k]
            d1 = row[0] - cy1 * row[2] - cu1 * row[5]
            d2 = row[1] - cy2 * row[3] - cu2 * row[4]
            e1 = d1 * d1
            e2 = d2 * d2
            errstats[0] += e1
            errstats[1] += e1 * e1
            errstats[2] += e2
            errstats[3] += e2 * e2
        for j in range(6):
            for k in range(j):
                gram[j, k] = gram[k, j]
        return sums, gram, errstats


_BACKENDS = {"numpy": _chunk_stats_numpy}
if HAVE_NUMBA:
    _BACKENDS["numba"] = _chunk_stats_numba


def _resolve(name: str | None) -> str:
    if name is None or name == "":
        name = os.environ.get("RDL_BACKEND", "").strip().lower()
    if name == "":
        name = "numba" if HAVE_NUMBA else "numpy"
    if name not in ("numba", "numpy"):
        raise InvalidParams(f"unknown backend {name!r}; expected 'numba' or 'numpy'")
    if name == "numba" and not HAVE_NUMBA:
        raise InvalidParams("backend 'numba' requested but numba is not importable")
    return name


_ACTIVE = _resolve(None)


def active_backend() -> str:
    """Name of the backend currently dispatching :func:`chunk_stats`."""
    return _ACTIVE


def set_backend(name: str | None) -> str:
    """Select ``'numba'`` or ``'numpy'``; ``None`` re-reads ``RDL_BACKEND``."""
    global _ACTIVE
    _ACTIVE = _resolve(name)
    return _ACTIVE


def chunk_stats(w: np.ndarray, transform: np.ndarray, cy1: float, cu1: float,
                cy2: float, cu2: float):
    """Reduce one chunk of standard-normal drivers to running statistics.

    Parameters
    ----------
    w : ndarray, shape (m, 6)
        Standard-normal drivers ``(x1, x2, z1, z2, q1, q2)``, one row per
        sample.
    transform : ndarray, shape (6, 6)
        Row ``j`` maps drivers to joint variable ``j`` in the order
        ``(x1, x2, y1, y2, u1, u2)`` (see ``rdl.model.joint_transform``).
    cy1, cu1 : float
        Decoder-1 coefficients: ``xhat1 = cy1 * y1 + cu1 * u2``.
    cy2, cu2 : float
        Decoder-2 coefficients: ``xhat2 = cy2 * y2 + cu2 * u1``.

    Returns
    -------
    sums : ndarray, shape (6,)
        Column sums of the joint samples.
    gram : ndarray, shape (6, 6)
        Uncentered second-moment accumulator ``cols.T @ cols``.
    errstats : ndarray, shape (4,)
        ``[sum e1, sum e1**2, sum e2, sum e2**2]`` where
        ``e_m = (x_m - xhat_m)**2``.
    """
    w = np.ascontiguousarray(w, dtype=np.float64)
    transform = np.ascontiguousarray(transform, dtype=np.float64)
    impl = _BACKENDS[_ACTIVE]
    return impl(w, transform, float(cy1), float(cu1), float(cy2), float(cu2))
