"""Numerics for the (p,q;alpha,beta,nu;gamma)-deformed oscillator algebra."""

from .errors import (
    DeformationError,
    DomainError,
    InvalidBaseError,
    InvalidParamsError,
    MissingParameterError,
    NoRepresentationError,
    OutOfRangeError,
    PositivityError,
)
from .fock import (
    OperatorQuadruple,
    ResidualReport,
    build_fock,
    casimir_check,
    verify_bracket_identity,
    verify_relations,
)
from .params import (
    DeformationParams,
    DeformationPreset,
    PresetName,
    Regime,
    RegimeInfo,
    Sign,
    classify_regime,
    from_preset,
)
from .positivity import PositivityReport, admissible_gamma, check_positivity
from .representations import (
    CaseTag,
    RepClass,
    RepParams,
    RepresentationDescriptor,
    build_rep_matrices,
    classify_representation,
    lambda_recurrence_oracle,
    lambda_sequence,
)
from .spectrum import SpectrumConfig, SpectrumParams, energy, energy_parametrized, reparametrize, spacing
from .structure import BracketValue, StructureValue, bracket, f_closed, f_recurrence, genfunc_coeffs

__version__ = "0.1.0"
