"""Exact decomposition matrices for cyclotomic Brauer algebras.

The package computes, in exact rational arithmetic, the decomposition
matrices of cyclotomic Brauer (Nazarov-Wenzl) algebras with rational
parameters: admissibility of the parameter family, block-size selection and
parameter extension, weight combinatorics for a type-D parabolic category,
antispherical Kazhdan-Lusztig canonical bases, greedy tilting decomposition,
and level truncation — cross-validated at level one against a brute-force
diagram-algebra oracle.
"""

from .combinat import (
    LambdaIndex,
    content_sequence,
    conjugate,
    double_factorial,
    enumerate_lambda,
    updown_count,
    updown_count_table,
    updown_tableaux,
)
from .params import (
    ParamConfig,
    RetryExhausted,
    build_config,
    extend_parameters,
    is_r_disjoint,
    omega_series,
    select_block_sizes,
    simple_param_condition,
    verify_disjoint_extension,
)
from .weights import (
    WeightContext,
    enumerate_F,
    hat,
    in_F_rk,
    lambda_c,
    phiA_condition,
    psi_sets,
    tilde,
)
from .kl import (
    PINNED_CONJUGATE_CONVENTION,
    PINNED_KL_CONVENTION,
    Block,
    CanonicalBasisEngine,
    ClosedWorldViolation,
    ConventionUnpinned,
    KLTable,
    canonical_basis,
    collapse_to_wall,
    composition_matrix,
    lift_from_wall,
    partition_into_blocks,
    resolve_convention,
    singular_pairs,
    singular_reduction_table,
    tilting_table,
)
from .pipeline import (
    NegativeResidual,
    SaturationNotEstablished,
    content_consistency_check,
    decomposition_report,
    simple_dimensions,
    tilting_decomposition,
    truncated_verma_flag,
    verma_flag,
)
from .oracle import (
    DimensionTooLarge,
    compare,
    multiply,
    oracle_decomposition_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "CanonicalBasisEngine",
    "ClosedWorldViolation",
    "ConventionUnpinned",
    "DimensionTooLarge",
    "KLTable",
    "LambdaIndex",
    "NegativeResidual",
    "ParamConfig",
    "RetryExhausted",
    "SaturationNotEstablished",
    "WeightContext",
    "build_config",
    "canonical_basis",
    "collapse_to_wall",
    "compare",
    "composition_matrix",
    "conjugate",
    "content_consistency_check",
    "content_sequence",
    "decomposition_report",
    "double_factorial",
    "enumerate_F",
    "enumerate_lambda",
    "extend_parameters",
    "hat",
    "in_F_rk",
    "is_r_disjoint",
    "lambda_c",
    "lift_from_wall",
    "multiply",
    "omega_series",
    "oracle_decomposition_matrix",
    "partition_into_blocks",
    "phiA_condition",
    "psi_sets",
    "PINNED_CONJUGATE_CONVENTION",
    "PINNED_KL_CONVENTION",
    "resolve_convention",
    "select_block_sizes",
    "simple_dimensions",
    "simple_param_condition",
    "singular_pairs",
    "singular_reduction_table",
    "tilde",
    "tilting_decomposition",
    "tilting_table",
    "truncated_verma_flag",
    "updown_count",
    "updown_count_table",
    "updown_tableaux",
    "verma_flag",
    "verify_disjoint_extension",
]
