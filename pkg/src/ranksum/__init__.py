"""Exact rank-sum scoring (Mann-Whitney u, AUC, Gini) and propriety checks on {0,1}^n."""
from .distributions import (
    JointDistribution,
    MixtureDistribution,
    ProductDistribution,
    Relation,
    exact_rank,
    expected_score,
    expected_sigma,
    marginal_functional,
    optimal_preorders,
    pairwise_rank,
    weak_rank_members,
)
from .errors import (
    DegenerateOutcomeError,
    InvalidInputError,
    PreconditionError,
    RanksumError,
    ResourceLimitError,
)
from .kernels import (
    ROCCurve,
    ScoreKernel,
    alpha,
    auc,
    auc_kernel,
    get_kernel,
    gini,
    gini_kernel,
    marginal_score_sum,
    roc_curve,
    u_kernel,
    wmw_u,
)
from .preorder import (
    TotalPreorder,
    contained_set,
    enumerate_preorders,
    induce_preorder,
    is_contained,
    parse_preorder,
    rank_vector,
)
from .propriety import (
    GroupedMixtureSpec,
    ProprietyCertificate,
    check_propriety,
    expected_auc_grouped,
    search_counterexamples,
    verify_independence,
    verify_known_count,
    verify_latent,
)

__all__ = [
    "alpha",
    "auc",
    "auc_kernel",
    "check_propriety",
    "contained_set",
    "DegenerateOutcomeError",
    "enumerate_preorders",
    "exact_rank",
    "expected_auc_grouped",
    "expected_score",
    "expected_sigma",
    "get_kernel",
    "gini",
    "gini_kernel",
    "GroupedMixtureSpec",
    "induce_preorder",
    "InvalidInputError",
    "is_contained",
    "JointDistribution",
    "marginal_functional",
    "marginal_score_sum",
    "MixtureDistribution",
    "optimal_preorders",
    "pairwise_rank",
    "parse_preorder",
    "PreconditionError",
    "ProductDistribution",
    "ProprietyCertificate",
    "rank_vector",
    "RanksumError",
    "Relation",
    "ResourceLimitError",
    "roc_curve",
    "ROCCurve",
    "ScoreKernel",
    "search_counterexamples",
    "TotalPreorder",
    "u_kernel",
    "verify_independence",
    "verify_known_count",
    "verify_latent",
    "weak_rank_members",
    "wmw_u",
]

__version__ = "0.1.0"
