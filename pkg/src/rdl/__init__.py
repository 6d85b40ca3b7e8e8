"""Exact rate-distortion-leakage tradeoff for a two-terminal coupled
Gaussian measurement model, with a seeded Monte Carlo validator.

Layers: ``gauss`` (small multivariate-normal toolkit), ``model`` (the
measurement model and its derived quantities), ``tradeoff`` (closed-form
rates, leakages, and test-channel calibration), ``sim`` (chunked, seeded
simulation), ``cli`` (the ``rdl`` command).
"""

from .errors import (
    FactorizationFailure,
    InfeasibleDistortion,
    InvalidParams,
    InvalidSpec,
    RdlError,
    SingularConditioning,
)
from .gauss import (
    Conditional,
    GaussianSpec,
    SampleMatrix,
    condition,
    mutual_information,
    plugin_mi,
    sample,
)
from .model import (
    DerivedQuantities,
    SystemParams,
    assemble_joint,
    derive,
    joint_labels,
    joint_transform,
)
from .sim import Directions, SimConfig, SimReport, convergence_study, draw_joint, run
from .tradeoff import (
    DirectionOutcome,
    DistortionRequest,
    Regime,
    TradeoffPoint,
    achieved_d1,
    achieved_d2,
    calibrate_noise_1,
    calibrate_noise_2,
    direction_1,
    direction_2,
    leakage_1,
    leakage_2,
    rate_1,
    rate_2,
    tradeoff,
)

__version__ = "0.1.0"

__all__ = [
    "Conditional",
    "DerivedQuantities",
    "DirectionOutcome",
    "Directions",
    "DistortionRequest",
    "FactorizationFailure",
    "GaussianSpec",
    "InfeasibleDistortion",
    "InvalidParams",
    "InvalidSpec",
    "RdlError",
    "Regime",
    "SampleMatrix",
    "SimConfig",
    "SimReport",
    "SingularConditioning",
    "SystemParams",
    "TradeoffPoint",
    "achieved_d1",
    "achieved_d2",
    "assemble_joint",
    "calibrate_noise_1",
    "calibrate_noise_2",
    "condition",
    "convergence_study",
    "derive",
    "direction_1",
    "direction_2",
    "draw_joint",
    "joint_labels",
    "joint_transform",
    "leakage_1",
    "leakage_2",
    "mutual_information",
    "plugin_mi",
    "rate_1",
    "rate_2",
    "run",
    "sample",
    "tradeoff",
]
