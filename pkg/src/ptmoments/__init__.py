"""Multipartite entanglement tests from normally ordered moments.

The package builds Hermitian matrices of moments of partially transposed
states, searches their principal minors for negativity, and certifies full
multipartite entanglement when every canonical bipartition shows it.
"""

from .certify import (
    BipartitionOutcome,
    CertificationReport,
    SearchBudget,
    SweepPoint,
    certify_full,
    four_mode_pair_groups,
    sweep,
    sweep_to_csv,
    test_bipartition,
)
from .errors import (
    ExponentLimitError,
    MomentDataError,
    NumericError,
    ResourceLimitError,
    TruncationError,
    UnresolvedMomentsError,
)
from .matrix import (
    MinorResult,
    MomentMatrix,
    ScanResult,
    Selection,
    build_matrix,
    determinant,
    eigen_negativity_scan,
    min_principal_minor,
    named_minor,
    negativity_threshold,
    principal_minor,
)
from .moments import (
    CoherentProductMoments,
    FockStateMoments,
    MomentKey,
    MomentProvider,
    MomentTable,
    TableMoments,
    TmsvMoments,
    WStateMoments,
    WStateParams,
    auto_cutoff,
    destroy,
    fock_coherent_state,
    fock_tmsv_state,
    fock_wstate,
    load_moment_table,
    moment_table_to_json,
    partial_transpose,
    table_from_provider,
)
from .multiindex import (
    MonomialIndex,
    compare_gralex,
    count_up_to_weight,
    monomial_at,
    next_multiindex,
    nth_multiindex,
    nth_multiindex_closed2,
    position_of,
    weight,
)
from .operator_algebra import (
    MomentExpression,
    entry_expression,
    entry_expression_pt,
    normal_order_single_mode,
)
from .transpositions import (
    Decomposition,
    TranspositionSet,
    all_decompositions,
    bipartitions_coarsening,
    canonical_bipartitions,
    compose,
    refines,
)

__version__ = "0.1.0"

__all__ = [
    "BipartitionOutcome",
    "CertificationReport",
    "CoherentProductMoments",
    "Decomposition",
    "ExponentLimitError",
    "FockStateMoments",
    "MinorResult",
    "MomentDataError",
    "MomentExpression",
    "MomentKey",
    "MomentMatrix",
    "MomentProvider",
    "MomentTable",
    "MonomialIndex",
    "NumericError",
    "ResourceLimitError",
    "ScanResult",
    "SearchBudget",
    "Selection",
    "SweepPoint",
    "TableMoments",
    "TmsvMoments",
    "TranspositionSet",
    "TruncationError",
    "UnresolvedMomentsError",
    "WStateMoments",
    "WStateParams",
    "all_decompositions",
    "auto_cutoff",
    "bipartitions_coarsening",
    "build_matrix",
    "canonical_bipartitions",
    "certify_full",
    "compare_gralex",
    "compose",
    "count_up_to_weight",
    "destroy",
    "determinant",
    "eigen_negativity_scan",
    "entry_expression",
    "entry_expression_pt",
    "fock_coherent_state",
    "fock_tmsv_state",
    "fock_wstate",
    "four_mode_pair_groups",
    "load_moment_table",
    "min_principal_minor",
    "moment_table_to_json",
    "monomial_at",
    "named_minor",
    "negativity_threshold",
    "next_multiindex",
    "normal_order_single_mode",
    "nth_multiindex",
    "nth_multiindex_closed2",
    "partial_transpose",
    "position_of",
    "principal_minor",
    "refines",
    "sweep",
    "sweep_to_csv",
    "table_from_provider",
    "test_bipartition",
    "weight",
]
