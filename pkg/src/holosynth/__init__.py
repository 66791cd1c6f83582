"""holosynth: exact optimal controller synthesis for holonomic unitary gates.

Given a target unitary acting on a k-dimensional subspace, the package
constructs, in closed form, the constant generator whose horizontal
extremal curve on the manifold of orthonormal 2k-frames traces the
shortest closed loop of subspaces producing that unitary as its holonomy.
Analytic results are cross-checked by an independent discrete
parallel-transport oracle that consumes only the sampled projector loop.
"""

from .abelian import BerryController, berry_controller, berry_holonomy, bloch_curve
from .bundle import (
    ConnectionSample,
    connection_sample,
    horizontality_defect,
    loop_length_numeric,
    project,
    standard_base_frame,
)
from .catalog import GateCatalogEntry, catalog_get, catalog_names
from .config import DEFAULT_TOL, Tolerances
from .errors import (
    ConvergenceFailure,
    DimensionError,
    HolosynthError,
    InvalidFrame,
    InvalidProjector,
    NonSkewInput,
    NonUnitaryHolonomy,
    NonUnitaryInput,
    OpenLoop,
    ParamShapeMismatch,
    SingularInput,
    TooFewSamples,
    UnknownGate,
)
from .extremal import (
    Controller,
    HolonomyReport,
    curve_point,
    curve_samples,
    evaluate_controller,
    gate_commutes,
    holonomy_analytic,
    length_analytic,
    loop_closure_defect,
    transform_controller,
)
from .linalg import eig_unitary, expm_skew, haar_unitary, polar_unitary
from .synth import (
    SynthesisParams,
    SynthesisResult,
    channel_length,
    small_circle_params,
    synthesize,
)
from .verify import (
    OracleReport,
    SampledLoop,
    cross_validate,
    gauge_invariance_check,
    numeric_holonomy,
    sample_loop,
)

__version__ = "0.1.0"

__all__ = [
    "BerryController",
    "ConnectionSample",
    "Controller",
    "ConvergenceFailure",
    "DEFAULT_TOL",
    "DimensionError",
    "GateCatalogEntry",
    "HolonomyReport",
    "HolosynthError",
    "InvalidFrame",
    "InvalidProjector",
    "NonSkewInput",
    "NonUnitaryHolonomy",
    "NonUnitaryInput",
    "OpenLoop",
    "OracleReport",
    "ParamShapeMismatch",
    "SampledLoop",
    "SingularInput",
    "SynthesisParams",
    "SynthesisResult",
    "Tolerances",
    "TooFewSamples",
    "UnknownGate",
    "berry_controller",
    "berry_holonomy",
    "bloch_curve",
    "catalog_get",
    "catalog_names",
    "channel_length",
    "connection_sample",
    "cross_validate",
    "curve_point",
    "curve_samples",
    "eig_unitary",
    "evaluate_controller",
    "expm_skew",
    "gate_commutes",
    "gauge_invariance_check",
    "haar_unitary",
    "holonomy_analytic",
    "horizontality_defect",
    "length_analytic",
    "loop_closure_defect",
    "loop_length_numeric",
    "numeric_holonomy",
    "polar_unitary",
    "project",
    "sample_loop",
    "small_circle_params",
    "standard_base_frame",
    "synthesize",
    "transform_controller",
]
