"""Semi-Hilbertian operator quantities for PSD-weighted complex matrices."""

from .core import (
    DimensionMismatch,
    HermitianPSD,
    InvalidParam,
    NotAPositive,
    NotAUnitary,
    NotHermitian,
    NotInBA,
    NotPSD,
    NotUnitVector,
    ReducedPair,
    SemiHilbertError,
    ToleranceFailure,
    UnknownBoundId,
    ZeroWeight,
    a_adjoint,
    a_inner,
    a_norm,
    admits_a_adjoint,
    im_part,
    is_a_selfadjoint,
    re_part,
    reduce,
    validate_psd,
)
from .radii import (
    DwResult,
    OptimizerConfig,
    a_crawford,
    a_dw_radius,
    a_min_modulus,
    a_numerical_radius,
    a_op_norm,
    delta_inf,
    mu_eta,
    residual_inf,
)
from .bounds import BoundReport, bound_report, competitor

__version__ = "0.1.0"

__all__ = [
    "DimensionMismatch",
    "HermitianPSD",
    "InvalidParam",
    "NotAPositive",
    "NotAUnitary",
    "NotHermitian",
    "NotInBA",
    "NotPSD",
    "NotUnitVector",
    "ReducedPair",
    "SemiHilbertError",
    "ToleranceFailure",
    "UnknownBoundId",
    "ZeroWeight",
    "a_adjoint",
    "a_inner",
    "a_norm",
    "admits_a_adjoint",
    "im_part",
    "is_a_selfadjoint",
    "re_part",
    "reduce",
    "validate_psd",
    "DwResult",
    "OptimizerConfig",
    "a_crawford",
    "a_dw_radius",
    "a_min_modulus",
    "a_numerical_radius",
    "a_op_norm",
    "delta_inf",
    "mu_eta",
    "residual_inf",
    "BoundReport",
    "bound_report",
    "competitor",
]
