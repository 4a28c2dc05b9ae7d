"""Schur multiplier norms, fullness of vector sets, and extremality
certificates for correlation matrices and positive multipliers.

The compiled kernel backend is used automatically when built; check
``schurmult.BACKEND`` to see which one is active.
"""
from ._backend import NAME as BACKEND
from .errors import SchurmultError
from .extremality import (
    ConvexSplit,
    ExtremalityReport,
    Verdict,
    corollary_decomposition_bound,
    extend_columns,
    fvg_factorization,
    general_decompose_from_witness,
    general_necessary_conditions,
    generate_extremal_q,
    positive_extremality_necessary,
    q_decompose,
    q_extremality,
    q_face_check,
    q_membership,
)
from .fullness import (
    FullnessResult,
    fullness_test,
    square_dim_bound_check,
    transport_fullness,
    witness_candidates,
)
from .linalg import (
    HermEig,
    SpanBasis,
    as_matrix,
    herm_eig,
    polar,
    psd_check,
    psd_sqrt,
    rank_of,
    span_basis,
)
from .matio import (
    golden_names,
    golden_path,
    load_golden,
    matrix_digest,
    parse_matrix,
    serialize_matrix,
    write_matrix,
)
from .norm import (
    NormResult,
    SchurFactorization,
    ascent_lower_bound,
    compress_to_rank,
    extract_factorization,
    multiplier_norm,
    optimal_psd_factorization,
)
from .schur import (
    NormBounds,
    column_norm,
    entry_lower_bound,
    factorization_upper_bound,
    norm_bounds,
    positive_multiplier_norm,
    rank_one_extremal_check,
    schur_product,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConvexSplit",
    "ExtremalityReport",
    "FullnessResult",
    "HermEig",
    "NormBounds",
    "NormResult",
    "SchurFactorization",
    "SchurmultError",
    "SpanBasis",
    "Verdict",
    "as_matrix",
    "ascent_lower_bound",
    "column_norm",
    "compress_to_rank",
    "corollary_decomposition_bound",
    "entry_lower_bound",
    "extend_columns",
    "extract_factorization",
    "factorization_upper_bound",
    "fullness_test",
    "fvg_factorization",
    "general_decompose_from_witness",
    "general_necessary_conditions",
    "generate_extremal_q",
    "golden_names",
    "golden_path",
    "herm_eig",
    "load_golden",
    "matrix_digest",
    "multiplier_norm",
    "norm_bounds",
    "optimal_psd_factorization",
    "parse_matrix",
    "polar",
    "positive_extremality_necessary",
    "positive_multiplier_norm",
    "psd_check",
    "psd_sqrt",
    "q_decompose",
    "q_extremality",
    "q_face_check",
    "q_membership",
    "rank_of",
    "rank_one_extremal_check",
    "schur_product",
    "serialize_matrix",
    "span_basis",
    "square_dim_bound_check",
    "transport_fullness",
    "witness_candidates",
    "write_matrix",
]
