"""Two-terminal coupled Gaussian measurement model.

Two unit-variance states ``x1``, ``x2`` are observed at two terminals
through cross-coupled noisy measurements::

    y1 = x1 + alpha * x2 + z1        z1 ~ N(0, sigma1_sq)
    y2 = beta * x1 + x2 + z2         z2 ~ N(0, sigma2_sq)

with all of ``x1, x2, z1, z2`` mutually independent.  A terminal may share
a noisy description ``u_m = y_m + q_m`` of its measurement, where ``q_m``
is independent Gaussian quantization noise of variance ``s_m``.

This module derives every second-moment quantity the tradeoff and
simulation layers need: the measurement variances ``v1``, ``v2`` and
cross-moment ``e``, the linear MMSE coefficients, the per-terminal
distortion floors (both measurements jointly) and ceilings (local
measurement only), and the leakage floors/ceilings in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gauss
from .errors import InvalidParams

FULL_LABELS = ("x1", "x2", "y1", "y2", "u1", "u2")


@dataclass(frozen=True)
class SystemParams:
    """The four scalars defining the measurement model.

    ``alpha`` and ``beta`` are the cross-coupling gains (>= 0; zero gives a
    decoupled, analytically degenerate system).  ``sigma1_sq`` and
    ``sigma2_sq`` are the strictly positive measurement-noise variances.
    """

    alpha: float
    beta: float
    sigma1_sq: float
    sigma2_sq: float

    def __post_init__(self):
        for name in ("alpha", "beta", "sigma1_sq", "sigma2_sq"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
                raise InvalidParams(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(float(value)):
                raise InvalidParams(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.alpha < 0:
            raise InvalidParams(f"alpha must be >= 0, got {self.alpha}")
        if self.beta < 0:
            raise InvalidParams(f"beta must be >= 0, got {self.beta}")
        if self.sigma1_sq <= 0:
            raise InvalidParams(f"sigma1_sq must be > 0, got {self.sigma1_sq}")
        if self.sigma2_sq <= 0:
            raise InvalidParams(f"sigma2_sq must be > 0, got {self.sigma2_sq}")

    def swapped(self) -> "SystemParams":
        """The mirror system: terminals 1 and 2 exchanged."""
        return SystemParams(self.beta, self.alpha, self.sigma2_sq, self.sigma1_sq)


@dataclass(frozen=True)
class DerivedQuantities:
    """Closed-form second-moment quantities of a :class:`SystemParams`.

    Distortions are mean-square errors of unit-variance states; leakage
    bounds are in bits.  ``d_min_m`` uses both measurements jointly,
    ``d_max_m`` only the local one; ``l<m>_min`` / ``l<m>_max`` are the
    no-communication and infinite-rate leakages about state ``m``.
    """

    params: SystemParams
    v1: float
    v2: float
    e: float
    det: float
    k1: float
    k2: float
    l1: float
    l2: float
    d_min_1: float
    d_min_2: float
    d_max_1: float
    d_max_2: float
    l1_min: float
    l1_max: float
    l2_min: float
    l2_max: float


def derive(params: SystemParams) -> DerivedQuantities:
    """Populate all derived quantities from the closed forms.

    The MMSE coefficients solve the two 2x2 normal-equation systems; the
    distortion bounds are the corresponding conditional variances; the
    leakage bounds are evaluated through :func:`rdl.gauss.mutual_information`
    on the assembled four-variable joint.
    """
    a, b = params.alpha, params.beta
    v1 = 1.0 + a * a + params.sigma1_sq
    v2 = 1.0 + b * b + params.sigma2_sq
    e = a + b
    det = v1 * v2 - e * e
    k1 = (v2 - b * e) / det
    k2 = (b * v1 - e) / det
    l1 = (a * v2 - e) / det
    l2 = (v1 - a * e) / det
    d_min_1 = 1.0 - (b * b * v1 + v2 - 2.0 * b * e) / det
    d_min_2 = 1.0 - (v1 + a * a * v2 - 2.0 * a * e) / det
    d_max_1 = 1.0 - 1.0 / v1
    d_max_2 = 1.0 - 1.0 / v2
    joint = assemble_joint(params)
    l1_min = gauss.mutual_information(joint, [0], [3])
    l1_max = gauss.mutual_information(joint, [0], [2, 3])
    l2_min = gauss.mutual_information(joint, [1], [2])
    l2_max = gauss.mutual_information(joint, [1], [2, 3])
    return DerivedQuantities(
        params=params,
        v1=v1, v2=v2, e=e, det=det,
        k1=k1, k2=k2, l1=l1, l2=l2,
        d_min_1=d_min_1, d_min_2=d_min_2, d_max_1=d_max_1, d_max_2=d_max_2,
        l1_min=l1_min, l1_max=l1_max, l2_min=l2_min, l2_max=l2_max,
    )


def _check_quant_var(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise InvalidParams(f"{name} must be a finite variance >= 0, got {value}")
    return value


def joint_labels(with_u1: bool, with_u2: bool) -> tuple[str, ...]:
    """Variable ordering of :func:`assemble_joint` for the given U blocks."""
    labels = ["x1", "x2", "y1", "y2"]
    if with_u1:
        labels.append("u1")
    if with_u2:
        labels.append("u2")
    return tuple(labels)


def assemble_joint(params: SystemParams, s1: float | None = None, s2: float | None = None) -> gauss.GaussianSpec:
    """Zero-mean joint law of ``(x1, x2, y1, y2[, u1][, u2])``.

    ``u_m`` is included when its quantization variance ``s_m`` is given;
    ``s_m = 0`` makes ``u_m`` a perfect copy of ``y_m``.  Covariance entries
    come from the closed-form moments (not from sampling machinery), which
    makes this the independent reference law for the simulator.
    """
    a, b = params.alpha, params.beta
    v1 = 1.0 + a * a + params.sigma1_sq
    v2 = 1.0 + b * b + params.sigma2_sq
    e = a + b
    if s1 is not None:
        s1 = _check_quant_var("s1", s1)
    if s2 is not None:
        s2 = _check_quant_var("s2", s2)

    # Covariance rows against the base variables, in FULL_LABELS order.
    # u_m duplicates y_m's cross moments and adds s_m on the diagonal.
    base = {
        "x1": {"x1": 1.0, "x2": 0.0, "y1": 1.0, "y2": b},
        "x2": {"x1": 0.0, "x2": 1.0, "y1": a, "y2": 1.0},
        "y1": {"x1": 1.0, "x2": a, "y1": v1, "y2": e},
        "y2": {"x1": b, "x2": 1.0, "y1": e, "y2": v2},
    }

    def moment(p: str, q: str) -> float:
        extra = 0.0
        if p == q == "u1":
            extra = s1
        if p == q == "u2":
            extra = s2
        p_base = "y1" if p == "u1" else "y2" if p == "u2" else p
        q_base = "y1" if q == "u1" else "y2" if q == "u2" else q
        return base[p_base][q_base] + extra

    labels = joint_labels(s1 is not None, s2 is not None)
    dim = len(labels)
    cov = np.empty((dim, dim))
    for i, p in enumerate(labels):
        for j, q in enumerate(labels):
            cov[i, j] = moment(p, q)
    return gauss.GaussianSpec(mean=np.zeros(dim), cov=cov)


def joint_transform(params: SystemParams, s1: float = 0.0, s2: float = 0.0) -> np.ndarray:
    """Linear map from i.i.d. standard normals to the full joint vector.

    Row ``i`` of the returned 6x6 matrix gives variable ``FULL_LABELS[i]``
    as a combination of the unit-variance drivers
    ``(x1, x2, z1, z2, q1, q2)``.  The simulator applies this map to
    per-stream standard-normal draws; its implied covariance equals
    :func:`assemble_joint`'s by construction.
    """
    a, b = params.alpha, params.beta
    s1 = _check_quant_var("s1", s1)
    s2 = _check_quant_var("s2", s2)
    sd1 = math.sqrt(params.sigma1_sq)
    sd2 = math.sqrt(params.sigma2_sq)
    return np.array([
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, a, sd1, 0.0, 0.0, 0.0],
        [b, 1.0, 0.0, sd2, 0.0, 0.0],
        [1.0, a, sd1, 0.0, math.sqrt(s1), 0.0],
        [b, 1.0, 0.0, sd2, 0.0, math.sqrt(s2)],
    ])
