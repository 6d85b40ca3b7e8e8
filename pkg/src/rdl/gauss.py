"""Small dense multivariate-Gaussian toolkit.

Everything downstream reduces to exact second-moment bookkeeping on joint
Gaussian vectors of dimension <= 8: covariance validation, conditioning via
the Schur complement, closed-form mutual information (in bits), seeded
sampling, and the Gaussian plug-in mutual-information estimate computed
from a sample covariance.

All operations are pure functions of their arguments and hold no shared
state, so they are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from .errors import FactorizationFailure, InvalidParams, InvalidSpec, SingularConditioning

# Tolerances for validating and factoring the small covariance matrices
# used here; genuinely degenerate inputs trip them, healthy ones never do.
SYMMETRY_TOL = 1e-12
PSD_TOL = 1e-10
SINGULAR_TOL = 1e-12

_LOG2 = np.log(2.0)


@dataclass(frozen=True)
class GaussianSpec:
    """A joint Gaussian law: mean vector plus symmetric PSD covariance.

    Parameters
    ----------
    mean : array-like, shape (dim,)
    cov : array-like, shape (dim, dim)
        Must be symmetric within ``SYMMETRY_TOL`` (absolute, per entry) and
        have no eigenvalue below ``-PSD_TOL``.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 1:
            raise InvalidSpec(f"mean must be a vector, got shape {mean.shape}")
        if cov.shape != (mean.size, mean.size):
            raise InvalidSpec(f"cov shape {cov.shape} does not match dim {mean.size}")
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(cov)):
            raise InvalidSpec("mean and cov must be finite")
        asym = np.max(np.abs(cov - cov.T)) if cov.size else 0.0
        if asym > SYMMETRY_TOL:
            raise InvalidSpec(f"cov is asymmetric by {asym:.3e} (tol {SYMMETRY_TOL})")
        min_eig = float(np.linalg.eigvalsh(cov).min()) if cov.size else 0.0
        if min_eig < -PSD_TOL:
            raise InvalidSpec(f"cov has eigenvalue {min_eig:.3e} below -{PSD_TOL}")
        mean.flags.writeable = False
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self) -> int:
        return self.mean.size


@dataclass(frozen=True)
class SampleMatrix:
    """``n`` joint draws of a ``dim``-variate vector, one draw per row."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2:
            raise InvalidParams(f"sample data must be 2-D, got shape {data.shape}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class Conditional:
    """The conditional law of block A given block B.

    The posterior mean at an observed vector ``y_b`` is
    ``const + coef @ y_b``; the conditional covariance ``cov`` does not
    depend on the observation.
    """

    coef: np.ndarray
    const: np.ndarray
    cov: np.ndarray


def _check_indices(dim: int, *index_sets: "list[int] | tuple[int, ...] | np.ndarray"):
    """Validate index sets: integral, in range, no repeats, pairwise disjoint."""
    seen: set[int] = set()
    out = []
    for idx in index_sets:
        arr = np.asarray(idx, dtype=np.intp).ravel()
        if arr.size == 0:
            raise InvalidParams("index sets must be nonempty")
        if arr.min() < 0 or arr.max() >= dim:
            raise InvalidParams(f"index out of range for dim {dim}: {arr.tolist()}")
        uniq = set(arr.tolist())
        if len(uniq) != arr.size:
            raise InvalidParams(f"repeated index in {arr.tolist()}")
        if uniq & seen:
            raise InvalidParams(f"index sets must be disjoint, overlap: {sorted(uniq & seen)}")
        seen |= uniq
        out.append(arr)
    return out


def condition(spec: GaussianSpec, target_idx, given_idx) -> Conditional:
    """Condition block A (``target_idx``) on block B (``given_idx``).

    Returns the Schur-complement conditional covariance
    ``S_AA - S_AB S_BB^-1 S_BA`` together with the posterior-mean
    coefficient matrix ``S_AB S_BB^-1``.

    Raises
    ------
    SingularConditioning
        If the conditioning block has an eigenvalue below ``SINGULAR_TOL``,
        which signals a degenerate measurement model.
    """
    a, b = _check_indices(spec.dim, target_idx, given_idx)
    s_bb = spec.cov[np.ix_(b, b)]
    if float(np.linalg.eigvalsh(s_bb).min()) < SINGULAR_TOL:
        raise SingularConditioning(f"conditioning block {b.tolist()} is singular")
    s_ab = spec.cov[np.ix_(a, b)]
    coef = np.linalg.solve(s_bb, s_ab.T).T
    cond_cov = spec.cov[np.ix_(a, a)] - coef @ s_ab.T
    cond_cov = 0.5 * (cond_cov + cond_cov.T)
    const = spec.mean[a] - coef @ spec.mean[b]
    return Conditional(coef=coef, const=const, cov=cond_cov)


def mutual_information(spec: GaussianSpec, idx_a, idx_b) -> float:
    """Mutual information between two disjoint blocks, in bits.

    Evaluates ``0.5 * log2(det S_AA * det S_BB / det S_AB-joint)``; the
    result is clamped at zero against rounding.

    Raises
    ------
    SingularConditioning
        If the joint covariance on A union B is not positive definite
        within ``SINGULAR_TOL``.
    """
    a, b = _check_indices(spec.dim, idx_a, idx_b)
    ab = np.concatenate([a, b])
    joint = spec.cov[np.ix_(ab, ab)]
    if float(np.linalg.eigvalsh(joint).min()) < SINGULAR_TOL:
        raise SingularConditioning("joint covariance on A|B is singular")
    sign_a, logdet_a = np.linalg.slogdet(spec.cov[np.ix_(a, a)])
    sign_b, logdet_b = np.linalg.slogdet(spec.cov[np.ix_(b, b)])
    sign_j, logdet_j = np.linalg.slogdet(joint)
    if min(sign_a, sign_b, sign_j) <= 0:
        raise SingularConditioning("covariance block has nonpositive determinant")
    mi = 0.5 * (logdet_a + logdet_b - logdet_j) / _LOG2
    return max(mi, 0.0)


def _sqrt_factor(cov: np.ndarray) -> np.ndarray:
    """Symmetric square-root factor L with L @ L.T == cov.

    Eigenvalues in ``[-PSD_TOL, 0)`` are clipped to zero so boundary
    covariances (e.g. zero quantization noise) remain sampleable.
    """
    eigvals, eigvecs = np.linalg.eigh(cov)
    if float(eigvals.min()) < -PSD_TOL:
        raise FactorizationFailure(
            f"covariance eigenvalue {eigvals.min():.3e} below -{PSD_TOL}"
        )
    eigvals = np.clip(eigvals, 0.0, None)
    return eigvecs * np.sqrt(eigvals)


def sample(spec: GaussianSpec, n: int, seed: int) -> SampleMatrix:
    """Draw ``n`` i.i.d. vectors from ``spec``, deterministically in ``seed``.

    Uses the eigenvalue square root of the covariance and the package RNG
    policy (see ``rdl.rng``); identical ``(seed, n, dim)`` calls return
    bit-identical matrices on the same build.
    """
    if n < 1:
        raise InvalidParams(f"sample count must be >= 1, got {n}")
    factor = _sqrt_factor(spec.cov)
    z = rng.generator(seed).standard_normal((n, spec.dim))
    return SampleMatrix(data=spec.mean + z @ factor.T)


def spec_from_samples(samples: SampleMatrix) -> GaussianSpec:
    """Gaussian spec with the sample mean and sample covariance (ddof=1)."""
    if samples.n < samples.dim + 2:
        raise InvalidParams(
            f"need at least dim+2={samples.dim + 2} rows to estimate covariance, "
            f"got {samples.n}"
        )
    mean = samples.data.mean(axis=0)
    cov = np.cov(samples.data, rowvar=False, ddof=1)
    cov = np.atleast_2d(cov)
    cov = 0.5 * (cov + cov.T)
    return GaussianSpec(mean=mean, cov=cov)


def plugin_mi(samples: SampleMatrix, idx_a, idx_b) -> float:
    """Gaussian plug-in MI estimate (bits) between two column blocks.

    Substitutes the sample covariance into the closed-form determinant
    expression used by :func:`mutual_information`.
    """
    return mutual_information(spec_from_samples(samples), idx_a, idx_b)
