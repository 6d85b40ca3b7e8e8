"""Closed-form rate/distortion/leakage tradeoff for the two-terminal exchange.

For a target distortion ``d2`` that terminal 2 wants for its own state,
terminal 1 must transmit at a rate that depends only on ``d2``, and in
doing so leaks a corresponding amount of information about its own state;
the mirror statement holds with the roles swapped.  This module evaluates
those curves exactly, in bits:

* ``rate_1`` / ``leakage_1`` as functions of ``d2`` (and the mirrored
  ``rate_2`` / ``leakage_2`` as functions of ``d1``);
* ``calibrate_noise_1`` / ``calibrate_noise_2``, the quantization-noise
  variance of the additive test channel that achieves a target distortion;
* ``tradeoff``, which classifies each direction (infeasible / interior /
  zero-rate) and assembles the full operating point.

Boundary behavior: at ``d = d_min`` the rate is ``+inf`` (represented as
``math.inf``, never a large float); at and above ``d = d_max`` the rate is
zero and the leakage equals the no-communication floor (``l1_min`` or
``l2_min``), which is also the continuous limit of the interior formula.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleDistortion, InvalidParams
from .model import DerivedQuantities, SystemParams, derive


class Regime(enum.Enum):
    """Which branch of the tradeoff applied to one direction."""

    INFEASIBLE = "infeasible"
    INTERIOR = "interior"
    ZERO_RATE = "zero_rate"


@dataclass(frozen=True)
class DistortionRequest:
    """Target mean-square errors: ``d1`` for state 1, ``d2`` for state 2."""

    d1: float
    d2: float

    def __post_init__(self):
        for name in ("d1", "d2"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
                raise InvalidParams(f"{name} must be a real number, got {value!r}")
            value = float(value)
            if not math.isfinite(value) or value <= 0:
                raise InvalidParams(f"{name} must be a finite value > 0, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class DirectionOutcome:
    """Rate, leakage, regime, and calibrated noise for one direction.

    ``rate`` and ``leakage`` are ``None`` exactly when the direction is
    infeasible; ``s`` is ``None`` when the rate is zero or infinite.
    """

    rate: float | None
    leakage: float | None
    regime: Regime
    s: float | None


@dataclass(frozen=True)
class TradeoffPoint:
    """Full operating point for a distortion request (all values in bits)."""

    r1: float | None
    r2: float | None
    leak1: float | None
    leak2: float | None
    regime1: Regime
    regime2: Regime
    s1: float | None
    s2: float | None


def _check_target(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise InvalidParams(f"{name} must be a finite value > 0, got {value}")
    return value


def rate_1(q: DerivedQuantities, d2: float) -> float:
    """Rate (bits/sample) terminal 1 must transmit for terminal 2 to reach ``d2``.

    Zero for ``d2 >= d_max_2``; ``math.inf`` at ``d2 == d_min_2``;
    raises :class:`InfeasibleDistortion` below ``d_min_2``.
    """
    d2 = _check_target("d2", d2)
    if d2 < q.d_min_2:
        raise InfeasibleDistortion(f"d2={d2} is below the floor d_min_2={q.d_min_2}")
    if d2 >= q.d_max_2:
        return 0.0
    if d2 == q.d_min_2:
        return math.inf
    return 0.5 * math.log2(q.det * q.l1 * q.l1 / (q.v2 * (d2 - q.d_min_2)))


def leakage_1(q: DerivedQuantities, d2: float) -> float:
    """Leakage (bits/sample) about state 1 at terminal 2 when it targets ``d2``.

    Decreases from ``l1_max`` at ``d2 == d_min_2`` to the no-communication
    floor ``l1_min`` at ``d2 == d_max_2``, and stays there for larger ``d2``.
    """
    d2 = _check_target("d2", d2)
    if d2 < q.d_min_2:
        raise InfeasibleDistortion(f"d2={d2} is below the floor d_min_2={q.d_min_2}")
    if d2 >= q.d_max_2:
        return q.l1_min
    denom = q.l1 * q.l1 * q.d_min_1 + q.k1 * q.k1 * (d2 - q.d_min_2)
    return 0.5 * math.log2(q.l1 * q.l1 / denom)


def rate_2(q: DerivedQuantities, d1: float) -> float:
    """Mirror of :func:`rate_1`: terminal 2's rate as a function of ``d1``."""
    d1 = _check_target("d1", d1)
    if d1 < q.d_min_1:
        raise InfeasibleDistortion(f"d1={d1} is below the floor d_min_1={q.d_min_1}")
    if d1 >= q.d_max_1:
        return 0.0
    if d1 == q.d_min_1:
        return math.inf
    return 0.5 * math.log2(q.det * q.k2 * q.k2 / (q.v1 * (d1 - q.d_min_1)))


def leakage_2(q: DerivedQuantities, d1: float) -> float:
    """Mirror of :func:`leakage_1`: leakage about state 2 at terminal 1."""
    d1 = _check_target("d1", d1)
    if d1 < q.d_min_1:
        raise InfeasibleDistortion(f"d1={d1} is below the floor d_min_1={q.d_min_1}")
    if d1 >= q.d_max_1:
        return q.l2_min
    denom = q.k2 * q.k2 * q.d_min_2 + q.l2 * q.l2 * (d1 - q.d_min_1)
    return 0.5 * math.log2(q.k2 * q.k2 / denom)


def calibrate_noise_1(q: DerivedQuantities, d2: float) -> float:
    """Quantization-noise variance ``s1`` whose test channel achieves ``d2``.

    Solves ``d2 = achieved_d2(q, s1)`` in closed form.  Defined for
    ``d2`` in ``[d_min_2, d_max_2)``: the closed lower endpoint maps to
    ``s1 = 0`` (transmit the raw measurement), while ``s1`` grows without
    bound as ``d2`` approaches ``d_max_2``.
    """
    d2 = _check_target("d2", d2)
    if d2 < q.d_min_2 or d2 >= q.d_max_2:
        raise InfeasibleDistortion(
            f"calibration needs d2 in [d_min_2, d_max_2) = [{q.d_min_2}, {q.d_max_2}), got {d2}"
        )
    if d2 == q.d_min_2:
        return 0.0
    a = q.params.alpha
    numer = (1.0 - d2) * q.e * q.e + a * a * q.v2 - 2.0 * a * q.e
    denom = (1.0 - d2) * q.v2 - 1.0
    return max(numer / denom - q.v1, 0.0)


def calibrate_noise_2(q: DerivedQuantities, d1: float) -> float:
    """Mirror of :func:`calibrate_noise_1`: ``s2`` achieving ``d1``."""
    d1 = _check_target("d1", d1)
    if d1 < q.d_min_1 or d1 >= q.d_max_1:
        raise InfeasibleDistortion(
            f"calibration needs d1 in [d_min_1, d_max_1) = [{q.d_min_1}, {q.d_max_1}), got {d1}"
        )
    if d1 == q.d_min_1:
        return 0.0
    b = q.params.beta
    numer = (1.0 - d1) * q.e * q.e + b * b * q.v1 - 2.0 * b * q.e
    denom = (1.0 - d1) * q.v1 - 1.0
    return max(numer / denom - q.v2, 0.0)


def achieved_d2(q: DerivedQuantities, s1: float) -> float:
    """Distortion terminal 2 reaches from ``(y2, u1)`` when ``Var(q1) = s1``."""
    a = q.params.alpha
    w = q.v1 + s1
    return 1.0 - (w + a * a * q.v2 - 2.0 * a * q.e) / (w * q.v2 - q.e * q.e)


def achieved_d1(q: DerivedQuantities, s2: float) -> float:
    """Distortion terminal 1 reaches from ``(y1, u2)`` when ``Var(q2) = s2``."""
    b = q.params.beta
    w = q.v2 + s2
    return 1.0 - (b * b * q.v1 + w - 2.0 * b * q.e) / (q.v1 * w - q.e * q.e)


def direction_1(q: DerivedQuantities, d2: float) -> DirectionOutcome:
    """Classify and evaluate the 1-to-2 direction at target ``d2``."""
    d2 = _check_target("d2", d2)
    if d2 < q.d_min_2:
        return DirectionOutcome(rate=None, leakage=None, regime=Regime.INFEASIBLE, s=None)
    rate = rate_1(q, d2)
    leakage = leakage_1(q, d2)
    if rate == 0.0:
        return DirectionOutcome(rate=rate, leakage=leakage, regime=Regime.ZERO_RATE, s=None)
    if math.isinf(rate):
        return DirectionOutcome(rate=rate, leakage=leakage, regime=Regime.INTERIOR, s=None)
    return DirectionOutcome(rate=rate, leakage=leakage, regime=Regime.INTERIOR,
                            s=calibrate_noise_1(q, d2))


def direction_2(q: DerivedQuantities, d1: float) -> DirectionOutcome:
    """Classify and evaluate the 2-to-1 direction at target ``d1``."""
    d1 = _check_target("d1", d1)
    if d1 < q.d_min_1:
        return DirectionOutcome(rate=None, leakage=None, regime=Regime.INFEASIBLE, s=None)
    rate = rate_2(q, d1)
    leakage = leakage_2(q, d1)
    if rate == 0.0:
        return DirectionOutcome(rate=rate, leakage=leakage, regime=Regime.ZERO_RATE, s=None)
    if math.isinf(rate):
        return DirectionOutcome(rate=rate, leakage=leakage, regime=Regime.INTERIOR, s=None)
    return DirectionOutcome(rate=rate, leakage=leakage, regime=Regime.INTERIOR,
                            s=calibrate_noise_2(q, d1))


def tradeoff(params: SystemParams, request: DistortionRequest) -> TradeoffPoint:
    """Full operating point for ``request``.

    The two directions decouple: ``(r1, leak1)`` is a function of
    ``request.d2`` only and ``(r2, leak2)`` of ``request.d1`` only.  An
    infeasible target in one direction is reported through that
    direction's regime instead of failing the whole call.
    """
    q = derive(params)
    fwd = direction_1(q, request.d2)
    rev = direction_2(q, request.d1)
    return TradeoffPoint(
        r1=fwd.rate, r2=rev.rate,
        leak1=fwd.leakage, leak2=rev.leakage,
        regime1=fwd.regime, regime2=rev.regime,
        s1=fwd.s, s2=rev.s,
    )
