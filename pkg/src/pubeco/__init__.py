"""Publication-policy ecosystem simulator and metrics engine."""

from .ecosystem import (
    CategoryProbs,
    EcosystemConfig,
    Strategy,
    category_probs,
    pub_prob_negative,
    pub_prob_positive,
    ssr_multiplier,
)
from .errors import (
    ConfigError,
    DomainError,
    PubecoError,
    UnattainablePowerError,
    UndefinedMetricError,
)
from .grid import (
    StrategyGrid,
    build_grid,
    expectation,
    lattice_median,
    marginal_summary,
)
from .mc import McEstimates, SimOutcome, category_gof_pvalue, concordance, simulate
from .metrics import (
    ComparisonRow,
    MetricsReport,
    breakthrough_discoveries,
    compare,
    compute_metrics,
    reliability,
    silenced_tp_rate,
    study_counts,
)
from .power import (
    TestSpec,
    noncentral_t_cdf,
    prob_positive,
    prob_positive_upper,
    sample_size_for_power,
    sample_size_for_power_upper,
)

__version__ = "0.1.0"

__all__ = [
    "CategoryProbs",
    "ComparisonRow",
    "ConfigError",
    "DomainError",
    "EcosystemConfig",
    "McEstimates",
    "MetricsReport",
    "PubecoError",
    "SimOutcome",
    "Strategy",
    "StrategyGrid",
    "TestSpec",
    "UnattainablePowerError",
    "UndefinedMetricError",
    "breakthrough_discoveries",
    "build_grid",
    "category_gof_pvalue",
    "category_probs",
    "compare",
    "compute_metrics",
    "concordance",
    "expectation",
    "lattice_median",
    "marginal_summary",
    "noncentral_t_cdf",
    "prob_positive",
    "prob_positive_upper",
    "pub_prob_negative",
    "pub_prob_positive",
    "reliability",
    "sample_size_for_power",
    "sample_size_for_power_upper",
    "silenced_tp_rate",
    "simulate",
    "ssr_multiplier",
    "study_counts",
]
