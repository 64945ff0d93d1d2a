"""Schur block product on matrices with operator entries.

The package realizes the product A [] B = (a_ij b_ij) on n-by-n matrices
of d-by-d complex blocks, together with its factorization through an
isometry V, a flip unitary F and a left representation on the triple
tensor space C^n (x) C^d (x) C^n, and ships randomized checkers for every
identity and inequality that factorization yields.
"""

from .blocks import (
    BlockMatrix,
    adjoint_block,
    block_identity,
    block_matmul,
    block_matrix,
    block_matrix_from_json,
    block_matrix_to_json,
    col_norm,
    diag_block,
    flatten,
    flatten_lift,
    lift_identity,
    lift_schur_k,
    operator_from_json,
    operator_to_json,
    row_norm,
    schur_block_product,
    schur_unit,
    unflatten,
    vector_from_json,
    vector_to_json,
    zero_block_matrix,
)
from .errors import ContractError, ConvergenceError, ShapeError
from .instances import (
    ENSEMBLES,
    GINIBRE,
    HAAR,
    HERMITIAN,
    RandomSpec,
    mix64,
    random_block_matrix,
    random_operator,
    sample_block_matrix,
    sample_lift,
    sample_operator,
    sample_vector,
)
from .linalg import (
    adjoint,
    as_operator,
    hermitian_min_eig,
    kron,
    matmul,
    power_iteration_norm,
    psd_sqrt,
    spectral_norm,
)
from .stinespring import (
    StinespringSystem,
    apply_flip,
    apply_isometry,
    apply_isometry_adjoint,
    apply_lambda,
    apply_rho,
    build_flip,
    build_isometry,
    build_lambda,
    build_rho,
    build_sigma,
    kronecker_block_product,
    triple_dim,
)
from .verify import (
    DEFAULT_TOLERANCES,
    PROPERTY_IDS,
    PropertyResult,
    cauchy_schwarz_rhs_routes,
    lift_norm_ratio,
    merge_results,
    row_norm_via_schur,
    run_property,
    verify_cauchy_schwarz,
    verify_cb_level,
    verify_decomposition,
    verify_factorization,
    verify_livshits,
    verify_norm_lemmas,
    verify_sandwich,
    verify_sharpness,
    verify_structure,
)

__version__ = "0.1.0"

__all__ = [
    "BlockMatrix",
    "ContractError",
    "ConvergenceError",
    "DEFAULT_TOLERANCES",
    "ENSEMBLES",
    "GINIBRE",
    "HAAR",
    "HERMITIAN",
    "PROPERTY_IDS",
    "PropertyResult",
    "RandomSpec",
    "ShapeError",
    "StinespringSystem",
    "adjoint",
    "adjoint_block",
    "apply_flip",
    "apply_isometry",
    "apply_isometry_adjoint",
    "apply_lambda",
    "apply_rho",
    "as_operator",
    "block_identity",
    "block_matmul",
    "block_matrix",
    "block_matrix_from_json",
    "block_matrix_to_json",
    "build_flip",
    "build_isometry",
    "build_lambda",
    "build_rho",
    "build_sigma",
    "cauchy_schwarz_rhs_routes",
    "col_norm",
    "diag_block",
    "flatten",
    "flatten_lift",
    "hermitian_min_eig",
    "kron",
    "kronecker_block_product",
    "lift_identity",
    "lift_norm_ratio",
    "lift_schur_k",
    "matmul",
    "merge_results",
    "mix64",
    "operator_from_json",
    "operator_to_json",
    "power_iteration_norm",
    "psd_sqrt",
    "random_block_matrix",
    "random_operator",
    "row_norm",
    "row_norm_via_schur",
    "run_property",
    "sample_block_matrix",
    "sample_lift",
    "sample_operator",
    "sample_vector",
    "schur_block_product",
    "schur_unit",
    "spectral_norm",
    "triple_dim",
    "unflatten",
    "vector_from_json",
    "vector_to_json",
    "verify_cauchy_schwarz",
    "verify_cb_level",
    "verify_decomposition",
    "verify_factorization",
    "verify_livshits",
    "verify_norm_lemmas",
    "verify_sandwich",
    "verify_sharpness",
    "verify_structure",
    "zero_block_matrix",
]
