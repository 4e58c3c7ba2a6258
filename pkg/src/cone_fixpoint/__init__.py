"""Finite cone metric spaces over vector lattices: contraction classifiers
and certified fixed-point solvers, with a JSON instance format and CLI."""

from .cone_metric import ConeMetricSpace, Potential, ValidationReport
from .errors import (
    ConeFixpointError,
    GenerationBudgetError,
    InstanceParseError,
    InstanceSchemaError,
    InstanceValidationError,
    InternalConsistencyError,
    PreconditionError,
)
from .mappings import (
    ClassifierReport,
    PairWitness,
    SetValuedMap,
    admissible_selectors,
    check_caristi_hypothesis,
    check_chatterjea,
    check_contraction,
    check_kannan,
    check_pointwise_contraction,
    check_weak_contraction,
    displacement_potential,
)
from .ordered_space import ConeVector, LinearMap, OrderedSpace, ShrinkingCertificate
from .solvers import (
    Certificate,
    FixedPointSummary,
    SolveTrace,
    StepWitness,
    bishop_phelps_climb,
    brute_force_fixed_points,
    caristi_solve,
    single_valued_solve,
    takahashi_solve,
    verify_trace,
    weak_contraction_solve,
)

__version__ = "0.1.0"

__all__ = [
    "ConeFixpointError",
    "ConeMetricSpace",
    "ConeVector",
    "Certificate",
    "ClassifierReport",
    "FixedPointSummary",
    "GenerationBudgetError",
    "InstanceParseError",
    "InstanceSchemaError",
    "InstanceValidationError",
    "InternalConsistencyError",
    "LinearMap",
    "OrderedSpace",
    "PairWitness",
    "Potential",
    "PreconditionError",
    "SetValuedMap",
    "ShrinkingCertificate",
    "SolveTrace",
    "StepWitness",
    "ValidationReport",
    "admissible_selectors",
    "bishop_phelps_climb",
    "brute_force_fixed_points",
    "caristi_solve",
    "check_caristi_hypothesis",
    "check_chatterjea",
    "check_contraction",
    "check_kannan",
    "check_pointwise_contraction",
    "check_weak_contraction",
    "displacement_potential",
    "single_valued_solve",
    "takahashi_solve",
    "verify_trace",
    "weak_contraction_solve",
]
