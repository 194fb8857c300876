"""Quantum scattering and bound states on sharply bent wires.

A sharp corner is modelled by a self-adjoint junction
Y(0+) = exp(i*gamma) K Y(0-), K in SL2(R).  Smooth regularizations
(open book arc, exponential well, or any curvature profile) reduce to
such a junction at low energy, with coefficients computed here.
"""
from .boundary import (
    ABPair,
    BoundaryCondition,
    ScatteringAmplitudes,
    bound_state_idealized,
    scatter_idealized,
    to_ab,
    validate_ab,
)
from .coefficients import EffectiveCoefficients
from .errors import (
    BentWireError,
    DegenerateCoefficient,
    DomainError,
    NoBoundState,
    NonConvergence,
    PoleError,
    SingularJunction,
    SpecFunDomain,
    StepTooCoarse,
)
from .expmodel import (
    ExpParams,
    bound_state_exponential,
    coeffs_exponential,
    scatter_exponential,
)
from .numeric import (
    CurvatureProfile,
    TransferMatrix,
    bound_state_numeric,
    fit_coefficients,
    junction_matrix,
    load_profile,
    potential_from_curvature,
    scatter_numeric,
    transfer_matrix,
    turning_angle,
)
from .openbook import (
    OpenBookParams,
    bound_state_openbook,
    coeffs_openbook,
    scatter_openbook,
)

__version__ = "0.1.0"

__all__ = [
    "ABPair",
    "BentWireError",
    "bound_state_exponential",
    "bound_state_idealized",
    "bound_state_numeric",
    "bound_state_openbook",
    "BoundaryCondition",
    "coeffs_exponential",
    "coeffs_openbook",
    "CurvatureProfile",
    "DegenerateCoefficient",
    "DomainError",
    "EffectiveCoefficients",
    "ExpParams",
    "fit_coefficients",
    "junction_matrix",
    "load_profile",
    "NoBoundState",
    "NonConvergence",
    "OpenBookParams",
    "PoleError",
    "potential_from_curvature",
    "scatter_exponential",
    "scatter_idealized",
    "scatter_numeric",
    "scatter_openbook",
    "ScatteringAmplitudes",
    "SingularJunction",
    "SpecFunDomain",
    "StepTooCoarse",
    "to_ab",
    "transfer_matrix",
    "TransferMatrix",
    "turning_angle",
    "validate_ab",
]
