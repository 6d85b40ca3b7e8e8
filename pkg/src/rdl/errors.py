"""Semantic exceptions shared by all rdl modules."""


class RdlError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(RdlError, ValueError):
    """An input violates its contract (domain, sign, finiteness, shape)."""


class InvalidSpec(InvalidParams):
    """A Gaussian spec violates symmetry or positive semidefiniteness."""


class SingularConditioning(RdlError):
    """A conditioning block is numerically singular; the model is degenerate."""


class FactorizationFailure(RdlError):
    """A covariance matrix has no real square root within tolerance."""


class InfeasibleDistortion(RdlError):
    """A requested distortion lies below the joint-estimation floor."""
