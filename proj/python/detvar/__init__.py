"""Geometry of bounded-rank matrix varieties.

Fixed-rank tangent/normal projections, tangent-cone membership oracles and
metric projection, the orthographic retraction, randomized verification
suites, and a rank-constrained completion demo. All matrices are numpy
arrays of floats.
"""

from ._core import (
    AdaptedFrame,
    BlockCoordinates,
    CompletionResult,
    ConeDecomposition,
    MembershipReport,
    SvdFactorization,
    TolerancePolicy,
    TrialReport,
    __version__,
    adapted_frame,
    arc_tangent_check,
    block_coordinates,
    contains_tensor_product,
    counterexample_fixture,
    decompose,
    direct_sum_rank_check,
    frobenius_inner,
    grassmann_witness,
    membership,
    membership_grassmann,
    membership_kernel_frames,
    numerical_rank,
    orthographic_retract,
    orthogonal_complement,
    orthonormal_range_basis,
    proj_normal,
    proj_tangent,
    project_to_cone,
    projection_optimality_check,
    sample_cone_element,
    schur_complement,
    sequence_limit_check,
    solve_completion,
    svd,
    tangent_dim,
    truncate_rank,
    verify_inclusion_chain,
)

__all__ = [
    "AdaptedFrame",
    "BlockCoordinates",
    "CompletionResult",
    "ConeDecomposition",
    "MembershipReport",
    "SvdFactorization",
    "TolerancePolicy",
    "TrialReport",
    "__version__",
    "adapted_frame",
    "arc_tangent_check",
    "block_coordinates",
    "contains_tensor_product",
    "counterexample_fixture",
    "decompose",
    "direct_sum_rank_check",
    "frobenius_inner",
    "grassmann_witness",
    "membership",
    "membership_grassmann",
    "membership_kernel_frames",
    "numerical_rank",
    "orthographic_retract",
    "orthogonal_complement",
    "orthonormal_range_basis",
    "proj_normal",
    "proj_tangent",
    "project_to_cone",
    "projection_optimality_check",
    "sample_cone_element",
    "schur_complement",
    "sequence_limit_check",
    "solve_completion",
    "svd",
    "tangent_dim",
    "truncate_rank",
    "verify_inclusion_chain",
]
