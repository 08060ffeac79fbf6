"""Estimation of discrete monotone probability mass functions.

Three estimators of a non-increasing pmf on {0, ..., K} — the raw
empirical frequencies, their monotone rearrangement, and the Grenander
(least-concave-majorant) maximum likelihood estimator — together with
Hellinger/l_k metrics, mixing-distribution recovery, simulators for the
Gaussian limit fluctuations, closed-form asymptotic efficiencies, and a
reproducible Monte Carlo harness.
"""

from .experiments import (
    EstimatorKind,
    ExperimentConfig,
    ExperimentSummary,
    FluctuationCdf,
    RiskEstimate,
    SummaryStats,
    TruthSpec,
    estimate_risk,
    fluctuation_cdf,
    run_experiment,
)
from .limits import (
    AsymptoticReport,
    LimitDraw,
    asymptotics,
    draw_limit,
    draw_limit_batch,
    flat_block_gren_reference,
    gren_zero_probability,
    harmonic,
    sparre_andersen_expectation,
    touch_count,
)
from .metrics import MetricKind, distance
from .operators import (
    constancy_blocks,
    gren,
    gren_oracle,
    limit_transform,
    mixing_estimate,
    rear,
)
from .pmf import (
    Counts,
    MixingWeights,
    Pmf,
    empirical_pmf,
    format_counts,
    format_pmf,
    geometric_pmf,
    mixture_of_uniforms,
    parse_counts,
    parse_pmf,
    sample,
    uniform_pmf,
)
from .rng import mix_seed

__version__ = "0.1.0"

__all__ = [
    "AsymptoticReport",
    "Counts",
    "EstimatorKind",
    "ExperimentConfig",
    "ExperimentSummary",
    "FluctuationCdf",
    "LimitDraw",
    "MetricKind",
    "MixingWeights",
    "Pmf",
    "RiskEstimate",
    "SummaryStats",
    "TruthSpec",
    "asymptotics",
    "constancy_blocks",
    "distance",
    "draw_limit",
    "draw_limit_batch",
    "empirical_pmf",
    "estimate_risk",
    "flat_block_gren_reference",
    "fluctuation_cdf",
    "format_counts",
    "format_pmf",
    "geometric_pmf",
    "gren",
    "gren_oracle",
    "gren_zero_probability",
    "harmonic",
    "limit_transform",
    "mix_seed",
    "mixing_estimate",
    "mixture_of_uniforms",
    "parse_counts",
    "parse_pmf",
    "rear",
    "run_experiment",
    "sample",
    "sparre_andersen_expectation",
    "touch_count",
    "uniform_pmf",
]
