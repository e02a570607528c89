"""Exact computation for linear sum-rank metric codes over finite fields.

Codes live in products of matrix spaces over one F_q; everything here is
integer-exact, theorem-backed fast paths are cross-checked by brute-force
oracles in the test suite and behind the CLI --oracle switch.
"""

from .anticode import (
    ANTICODE_CAP,
    AnticodeDescriptor,
    BlockSupport,
    anticode_dual,
    enumerate_anticodes,
    is_optimal_anticode,
    max_srk_generates,
    optimal_hamming_subspaces,
    prior_anticode_bound,
    product_descriptors,
    staircase_profile,
)
from .code import (
    DIST_CAP,
    LinearCode,
    MatrixTuple,
    Shape,
    trace_pairing,
)
from .cover import (
    CoverResult,
    CosetWitness,
    MeshulamResult,
    coset_rank_lower,
    coset_witness_exact,
    covering_number,
    leading_position,
    meshulam_search,
)
from .errors import (
    InvariantViolation,
    SearchExhausted,
    SumrankError,
    UsageError,
)
from .genweights import (
    VARIANTS,
    GammaBasis,
    WeightProfile,
    extension_context,
    gamma_expand,
    gen_weight,
    subfield_embedding,
    wei_duality_check,
    weight_profile,
)
from .gf import MAX_ORDER, FieldContext, FieldElement, field_from_dict
from .isom import (
    GROUP_CAP,
    Isometry,
    admissible_permutations,
    equivalent_codes,
    gl_group,
    gl_order,
    isometry_count,
    random_gl,
    random_isometry,
)
from .matfq import (
    MatrixFq,
    Subspace,
    count_subspaces,
    enumerate_subspaces,
    gaussian_binomial,
)
from .msrd import (
    MsrdReport,
    admissible_ranks,
    anticode_dim_extremes,
    dim_decomposition,
    distance_decomposition,
    msrd_check,
    msrd_weight_profile,
    r_msrd_check,
    r_mu,
    singleton_distance_bound,
    suffix_masses,
)
from .wiretap import (
    MI_CAP,
    WiretapScenario,
    canonical_complement,
    empirical_mi,
    leakage_dim,
    leakage_threshold,
    support_product,
    threshold_table,
    worst_case_leakage,
)

__version__ = "0.1.0"

__all__ = [
    "ANTICODE_CAP",
    "AnticodeDescriptor",
    "BlockSupport",
    "CosetWitness",
    "CoverResult",
    "DIST_CAP",
    "FieldContext",
    "FieldElement",
    "GROUP_CAP",
    "GammaBasis",
    "InvariantViolation",
    "Isometry",
    "LinearCode",
    "MAX_ORDER",
    "MI_CAP",
    "MatrixFq",
    "MatrixTuple",
    "MeshulamResult",
    "MsrdReport",
    "SearchExhausted",
    "Shape",
    "Subspace",
    "SumrankError",
    "UsageError",
    "VARIANTS",
    "WeightProfile",
    "WiretapScenario",
    "admissible_permutations",
    "admissible_ranks",
    "anticode_dim_extremes",
    "anticode_dual",
    "canonical_complement",
    "coset_rank_lower",
    "coset_witness_exact",
    "count_subspaces",
    "covering_number",
    "dim_decomposition",
    "distance_decomposition",
    "empirical_mi",
    "enumerate_anticodes",
    "enumerate_subspaces",
    "equivalent_codes",
    "extension_context",
    "field_from_dict",
    "gamma_expand",
    "gaussian_binomial",
    "gen_weight",
    "gl_group",
    "gl_order",
    "is_optimal_anticode",
    "isometry_count",
    "leading_position",
    "leakage_dim",
    "leakage_threshold",
    "max_srk_generates",
    "meshulam_search",
    "msrd_check",
    "msrd_weight_profile",
    "optimal_hamming_subspaces",
    "prior_anticode_bound",
    "product_descriptors",
    "r_msrd_check",
    "r_mu",
    "random_gl",
    "random_isometry",
    "singleton_distance_bound",
    "staircase_profile",
    "subfield_embedding",
    "suffix_masses",
    "support_product",
    "threshold_table",
    "trace_pairing",
    "wei_duality_check",
    "weight_profile",
    "worst_case_leakage",
]
