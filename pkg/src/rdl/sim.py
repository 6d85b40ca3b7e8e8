"""Seeded Monte Carlo simulator of the one-round two-terminal exchange.

One run draws ``n`` joint samples of ``(x1, x2, y1, y2, u1, u2)``, decodes
each state by linear MMSE from the local measurement plus the received
description (``xhat1`` from ``(y1, u2)``, ``xhat2`` from ``(y2, u1)``),
and reports empirical distortions, their standard errors, and Gaussian
plug-in leakage estimates next to the analytic targets.

Reproducibility contract
------------------------
Samples are generated in fixed chunks of ``CHUNK_SIZE`` rows.  Chunk ``c``
uses three independent Philox sub-streams keyed ``(c, 0)`` for the
source/noise block ``(x1, x2, z1, z2)``, ``(c, 1)`` for the quantization
driver of ``u1``, and ``(c, 2)`` for that of ``u2`` (see ``rdl.rng``).
Chunk statistics are combined in ascending chunk order, so the result is
byte-identical for any ``workers`` setting; separate quantization streams
make one direction's draws invariant to the other direction's target.
Multi-run studies derive one fresh master seed per run via
``rng.derive_seed``.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import gauss, kernels, rng
from .errors import InfeasibleDistortion, InvalidParams
from .model import SystemParams, assemble_joint, derive, joint_transform
from .tradeoff import (
    DistortionRequest,
    TradeoffPoint,
    calibrate_noise_1,
    calibrate_noise_2,
    tradeoff,
)

CHUNK_SIZE = 16384

# Column order of the simulated joint, fixed by model.FULL_LABELS.
_X1, _X2, _Y1, _Y2, _U1, _U2 = range(6)


class Directions(enum.Enum):
    """Which transmissions happen: ``u1`` serves ``d2``, ``u2`` serves ``d1``."""

    BOTH = "both"
    ONE_TO_TWO = "one_to_two"
    TWO_TO_ONE = "two_to_one"
    NONE = "none"


@dataclass(frozen=True)
class SimConfig:
    """One simulation request.

    ``n`` is the sample count (>= 100), ``seed`` the 64-bit master seed,
    ``workers`` the number of threads evaluating chunks (any value yields
    identical results).  The request must be feasible in each active
    direction (at or above the joint-estimation floor).
    """

    params: SystemParams
    request: DistortionRequest
    n: int
    seed: int
    directions: Directions = Directions.BOTH
    workers: int = 1

    def __post_init__(self):
        if not isinstance(self.params, SystemParams):
            raise InvalidParams(f"params must be SystemParams, got {type(self.params).__name__}")
        if not isinstance(self.request, DistortionRequest):
            raise InvalidParams(
                f"request must be DistortionRequest, got {type(self.request).__name__}"
            )
        if isinstance(self.directions, str):
            try:
                object.__setattr__(self, "directions", Directions(self.directions))
            except ValueError:
                raise InvalidParams(
                    f"directions must be one of {[d.value for d in Directions]}, "
                    f"got {self.directions!r}"
                ) from None
        elif not isinstance(self.directions, Directions):
            raise InvalidParams(f"directions must be a Directions value, got {self.directions!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise InvalidParams(f"n must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if self.n < 100:
            raise InvalidParams(f"n must be >= 100, got {self.n}")
        object.__setattr__(self, "seed", rng.check_seed(self.seed))
        if isinstance(self.workers, bool) or not isinstance(self.workers, (int, np.integer)):
            raise InvalidParams(f"workers must be an integer, got {self.workers!r}")
        object.__setattr__(self, "workers", int(self.workers))
        if self.workers < 1:
            raise InvalidParams(f"workers must be >= 1, got {self.workers}")
        q = derive(self.params)
        if self.directions in (Directions.BOTH, Directions.ONE_TO_TWO) and self.request.d2 < q.d_min_2:
            raise InfeasibleDistortion(
                f"d2={self.request.d2} is below the floor d_min_2={q.d_min_2}"
            )
        if self.directions in (Directions.BOTH, Directions.TWO_TO_ONE) and self.request.d1 < q.d_min_1:
            raise InfeasibleDistortion(
                f"d1={self.request.d1} is below the floor d_min_1={q.d_min_1}"
            )


@dataclass(frozen=True)
class SimReport:
    """Empirical results of one run next to their analytic targets.

    ``target_d1`` / ``target_d2`` are the distortions the decoders should
    achieve given the active directions (a requested distortion when the
    corresponding transmission is active and interior, otherwise the
    local-estimation ceiling).  Leakages are in bits.
    """

    empirical_d1: float
    empirical_d2: float
    empirical_leak1: float
    empirical_leak2: float
    std_err_d1: float
    std_err_d2: float
    target_d1: float
    target_d2: float
    analytic: TradeoffPoint
    n: int
    seed: int
    directions: Directions


def _chunk_normals(seed: int, chunk_index: int, m: int) -> np.ndarray:
    """Standard-normal drivers for one chunk, per the module seeding policy."""
    w = np.empty((m, 6))
    w[:, :4] = rng.generator(seed, (chunk_index, 0)).standard_normal((m, 4))
    w[:, 4] = rng.generator(seed, (chunk_index, 1)).standard_normal(m)
    w[:, 5] = rng.generator(seed, (chunk_index, 2)).standard_normal(m)
    return w


def _accumulate(params: SystemParams, s1: float, s2: float, n: int, seed: int,
                workers: int, dec1: tuple[float, float], dec2: tuple[float, float]):
    """Combined (sums, gram, errstats) over all chunks, in fixed chunk order."""
    transform = joint_transform(params, s1, s2)
    cy1, cu1 = dec1
    cy2, cu2 = dec2
    n_chunks = (n + CHUNK_SIZE - 1) // CHUNK_SIZE

    def one(ci: int):
        m = min(CHUNK_SIZE, n - ci * CHUNK_SIZE)
        w = _chunk_normals(seed, ci, m)
        return kernels.chunk_stats(w, transform, cy1, cu1, cy2, cu2)

    if workers == 1:
        parts = [one(ci) for ci in range(n_chunks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, range(n_chunks)))

    sums = np.zeros(6)
    gram = np.zeros((6, 6))
    errstats = np.zeros(4)
    for part_sums, part_gram, part_err in parts:
        sums += part_sums
        gram += part_gram
        errstats += part_err
    return sums, gram, errstats


def _direction_setup(active: bool, d: float, d_min: float, d_max: float, s_of_d):
    """Resolve one direction to (use_description, quant_var, achieved target).

    Active targets at or above the local ceiling need no transmission, so
    they degenerate to the no-communication case, like inactive directions.
    """
    if not active or d >= d_max:
        return False, 0.0, d_max
    return True, s_of_d(d), d


def _mse_stats(err_sum: float, err_sumsq: float, n: int) -> tuple[float, float]:
    mean = err_sum / n
    var = max((err_sumsq - n * mean * mean) / (n - 1), 0.0)
    return mean, math.sqrt(var / n)


def run(config: SimConfig) -> SimReport:
    """Execute one seeded simulation; deterministic given the config."""
    params = config.params
    q = derive(params)
    act1 = config.directions in (Directions.BOTH, Directions.ONE_TO_TWO)
    act2 = config.directions in (Directions.BOTH, Directions.TWO_TO_ONE)
    use_u1, s1, target_d2 = _direction_setup(
        act1, config.request.d2, q.d_min_2, q.d_max_2, lambda d: calibrate_noise_1(q, d))
    use_u2, s2, target_d1 = _direction_setup(
        act2, config.request.d1, q.d_min_1, q.d_max_1, lambda d: calibrate_noise_2(q, d))

    spec6 = assemble_joint(params, s1, s2)
    if use_u2:
        coef = gauss.condition(spec6, [_X1], [_Y1, _U2]).coef[0]
        dec1 = (float(coef[0]), float(coef[1]))
    else:
        dec1 = (float(gauss.condition(spec6, [_X1], [_Y1]).coef[0, 0]), 0.0)
    if use_u1:
        coef = gauss.condition(spec6, [_X2], [_Y2, _U1]).coef[0]
        dec2 = (float(coef[0]), float(coef[1]))
    else:
        dec2 = (float(gauss.condition(spec6, [_X2], [_Y2]).coef[0, 0]), 0.0)

    sums, gram, errstats = _accumulate(
        params, s1, s2, config.n, config.seed, config.workers, dec1, dec2)

    n = config.n
    empirical_d1, std_err_d1 = _mse_stats(errstats[0], errstats[1], n)
    empirical_d2, std_err_d2 = _mse_stats(errstats[2], errstats[3], n)

    mean_vec = sums / n
    cov = (gram - np.outer(sums, sums) / n) / (n - 1)
    cov = 0.5 * (cov + cov.T)
    spec_hat = gauss.GaussianSpec(mean=mean_vec, cov=cov)
    empirical_leak1 = gauss.mutual_information(
        spec_hat, [_X1], [_U1, _Y2] if use_u1 else [_Y2])
    empirical_leak2 = gauss.mutual_information(
        spec_hat, [_X2], [_U2, _Y1] if use_u2 else [_Y1])

    analytic = tradeoff(params, DistortionRequest(
        d1=config.request.d1 if act2 else q.d_max_1,
        d2=config.request.d2 if act1 else q.d_max_2,
    ))
    return SimReport(
        empirical_d1=empirical_d1, empirical_d2=empirical_d2,
        empirical_leak1=empirical_leak1, empirical_leak2=empirical_leak2,
        std_err_d1=std_err_d1, std_err_d2=std_err_d2,
        target_d1=target_d1, target_d2=target_d2,
        analytic=analytic, n=n, seed=config.seed, directions=config.directions,
    )


def convergence_study(config: SimConfig, n_grid: "list[int]") -> "list[SimReport]":
    """One run per sample count, with a fresh derived master seed per run."""
    counts = [int(n) for n in n_grid]
    for i, n in enumerate(counts):
        if n < 100:
            raise InvalidParams(f"n_grid entries must be >= 100, got {n}")
        if i > 0 and n <= counts[i - 1]:
            raise InvalidParams(f"n_grid must be ascending, got {counts}")
    return [
        run(replace(config, n=n, seed=rng.derive_seed(config.seed, i)))
        for i, n in enumerate(counts)
    ]


def draw_joint(params: SystemParams, s1: float, s2: float, n: int, seed: int) -> gauss.SampleMatrix:
    """Materialize ``n`` joint samples ``(x1, x2, y1, y2, u1, u2)``.

    Uses exactly the chunked streams of :func:`run`; mainly for estimator
    cross-checks that need raw samples rather than running statistics.
    """
    if n < 1:
        raise InvalidParams(f"n must be >= 1, got {n}")
    seed = rng.check_seed(seed)
    transform_t = joint_transform(params, s1, s2).T
    blocks = []
    n_chunks = (n + CHUNK_SIZE - 1) // CHUNK_SIZE
    for ci in range(n_chunks):
        m = min(CHUNK_SIZE, n - ci * CHUNK_SIZE)
        blocks.append(_chunk_normals(seed, ci, m) @ transform_t)
    return gauss.SampleMatrix(data=np.vstack(blocks))
