"""Exact KL-budgeted tilting, best-of-N policies, and their deviation theory
on finite alphabets, with a reproducible experiment CLI."""

from .bestofn import (
    BonConfig,
    RewardLevel,
    TypeLaw,
    TypeLawEntry,
    bon_enumeration_oracle,
    bon_exact_pmf,
    bon_expected_type,
    bon_kl_rate_to_optimal,
    bon_kl_to_reference,
    bon_sample,
    bon_type_law,
    expected_reward_rate,
    group_reward_levels,
    product_type_law,
    sequence_space_log_probs,
)
from .deviations import (
    CumulantPoint,
    RatePoint,
    deviation_hit_count,
    empirical_deviation_rate,
    finite_m_cumulant_check,
    legendre_oracle,
    rate_function,
    scaled_cumulant,
)
from .distributions import (
    CategoricalDistribution,
    Sequence,
    TypeVector,
    count_types,
    enumerate_types,
    from_log_weights,
    log_sequence_prob,
    log_type_class_size,
    make_distribution,
    sample_sequence,
    type_of,
)
from .errors import (
    AlignlabError,
    AlphabetMismatch,
    AlphabetTooSmall,
    BudgetExceeded,
    DegenerateFamily,
    InfeasibleBudget,
    InvalidN,
    LengthMismatch,
    NonPositiveOrder,
    NonPositiveWeight,
    SizeOverflow,
    SymbolOutOfRange,
    TargetOutOfRange,
)
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    run_closeness_bound,
    run_equivalence_scan,
    run_example1,
    run_experiment,
    run_ldp_probe,
    run_random_alphabet,
    run_ternary_figure,
)
from .metrics import cross_entropy, entropy, kl_divergence, renyi_cross_entropy
from .tilting import (
    TiltSolution,
    TradeoffPoint,
    max_achievable_kl,
    mismatched_tilt,
    reward_target_range,
    solve_alpha_for_kl,
    solve_beta_for_reward,
    tilt_compose_check,
    tradeoff_curve,
)

__all__ = [
    "AlignlabError",
    "AlphabetMismatch",
    "AlphabetTooSmall",
    "BonConfig",
    "BudgetExceeded",
    "CategoricalDistribution",
    "CumulantPoint",
    "DegenerateFamily",
    "ExperimentConfig",
    "ExperimentReport",
    "InfeasibleBudget",
    "InvalidN",
    "LengthMismatch",
    "NonPositiveOrder",
    "NonPositiveWeight",
    "RatePoint",
    "RewardLevel",
    "Sequence",
    "SizeOverflow",
    "SymbolOutOfRange",
    "TargetOutOfRange",
    "TiltSolution",
    "TradeoffPoint",
    "TypeLaw",
    "TypeLawEntry",
    "TypeVector",
    "bon_enumeration_oracle",
    "bon_exact_pmf",
    "bon_expected_type",
    "bon_kl_rate_to_optimal",
    "bon_kl_to_reference",
    "bon_sample",
    "bon_type_law",
    "count_types",
    "cross_entropy",
    "deviation_hit_count",
    "empirical_deviation_rate",
    "entropy",
    "enumerate_types",
    "expected_reward_rate",
    "finite_m_cumulant_check",
    "from_log_weights",
    "group_reward_levels",
    "kl_divergence",
    "legendre_oracle",
    "log_sequence_prob",
    "log_type_class_size",
    "make_distribution",
    "max_achievable_kl",
    "mismatched_tilt",
    "product_type_law",
    "rate_function",
    "renyi_cross_entropy",
    "reward_target_range",
    "run_closeness_bound",
    "run_equivalence_scan",
    "run_example1",
    "run_experiment",
    "run_ldp_probe",
    "run_random_alphabet",
    "run_ternary_figure",
    "sample_sequence",
    "scaled_cumulant",
    "sequence_space_log_probs",
    "solve_alpha_for_kl",
    "solve_beta_for_reward",
    "tilt_compose_check",
    "tradeoff_curve",
    "type_of",
]
