"""Finite diversities and constant-distortion L1 embeddings of symmetric diversities."""
from ._kernels import BACKEND
from .diversity import (
    CapExceeded,
    DiversityError,
    FiniteDiversity,
    Metric,
    MobiusResult,
    SplitWeighting,
    Verdict,
    check_axioms_exhaustive,
    check_axioms_reduced,
    eval_split_combination,
    evaluate,
    induced_metric,
    skewness,
    split_diversity_eval,
    split_values,
    split_weights_from_diversity,
    symmetric_diversity,
    symmetrize,
)
from .embedding import (
    EmbeddingReport,
    InfiniteDistortion,
    build_symmetric_embedding,
    capped_psi,
    choose_ell,
    coordinates_from_weights,
    distortion,
    embed_diversity,
    phi,
    phi_row,
    symmetric_mobius_weights,
    saturated_phi_ratio,
    x_of_ell,
)
from .generators import (
    diameter_diversity,
    l1_box_diversity,
    step_profile,
    phi_profile,
    random_points,
    random_subadditive_profile,
    steiner_diversity,
    truncation_diversity,
    tsp_diversity,
)
from .lp import LpProblem, LpSolution, optimal_split_distortion, solve_lp
from .points import PointConfiguration, PointSet
from .profiles import (
    BasisCoefficients,
    ConcaveProfile,
    ProfileError,
    SymmetricProfile,
    basis_coefficients,
    concave_majorant,
    psi,
    reconstruct_from_basis,
    validate_profile,
)

__version__ = "0.1.0"
