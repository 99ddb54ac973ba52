"""Numerical toolkit for Denjoy-Carleman classes.

Weight-sequence condition checking, Cartan-Gorny intermediate-derivative
bounds, sparse-order membership certificates, staircase counterexample
construction, and extremal trigonometric series with two-sided
derivative control.  All inequality work happens in log domain.
"""

from .certify import (
    Certificate,
    GapSequence,
    SparseBounds,
    certify_membership,
    check_hypotheses,
    gap_ratio,
    intermediate_envelope,
    log_c1_constant,
)
from .counterexample import (
    CounterexampleCert,
    RatioBlock,
    WeightOracle,
    construct_counterexample,
    gevrey_oracle,
    geometric_oracle,
    nlogn_oracle,
    power_oracle,
    search_threshold_index,
    sequence_oracle,
    verify_counterexample,
)
from .errors import (
    CarlemanError,
    HypothesisFailure,
    LogRangeError,
    SearchBudgetExceeded,
    VerificationFailure,
)
from .extremal import (
    ExtremalSeries,
    build_extremal,
    check_midpoint_lower,
    check_upper_bound,
    eval_derivative,
    finite_difference_oracle,
    log_tail_bound,
)
from .gorny import (
    CORPUS,
    GornyQuery,
    gorny_bound,
    interpolation_split,
    sampled_sup,
    verify_gorny_empirical,
)
from .logdomain import EPS_CMP, LOG2, close_rel, log_pow2_tower, logsumexp
from .quasianalytic import (
    PropagationPlan,
    propagation_plan,
    taylor_vanishing_bound,
    vanishing_radius,
)
from .sequences import (
    ConditionReport,
    FamilySpec,
    LogSequence,
    build_sequence,
    check_condition_A,
    check_log_convex,
    fit_analytic_constant,
    quasianalytic_diagnostic,
    ratios,
)

__version__ = "0.1.0"

__all__ = [
    "CORPUS",
    "Certificate",
    "CarlemanError",
    "ConditionReport",
    "CounterexampleCert",
    "EPS_CMP",
    "ExtremalSeries",
    "FamilySpec",
    "GapSequence",
    "GornyQuery",
    "HypothesisFailure",
    "LOG2",
    "LogRangeError",
    "LogSequence",
    "PropagationPlan",
    "RatioBlock",
    "SearchBudgetExceeded",
    "SparseBounds",
    "VerificationFailure",
    "WeightOracle",
    "build_extremal",
    "build_sequence",
    "certify_membership",
    "check_condition_A",
    "check_hypotheses",
    "check_log_convex",
    "check_midpoint_lower",
    "check_upper_bound",
    "close_rel",
    "construct_counterexample",
    "eval_derivative",
    "finite_difference_oracle",
    "fit_analytic_constant",
    "gap_ratio",
    "gevrey_oracle",
    "geometric_oracle",
    "gorny_bound",
    "intermediate_envelope",
    "interpolation_split",
    "log_c1_constant",
    "log_pow2_tower",
    "log_tail_bound",
    "logsumexp",
    "nlogn_oracle",
    "power_oracle",
    "propagation_plan",
    "quasianalytic_diagnostic",
    "ratios",
    "sampled_sup",
    "search_threshold_index",
    "sequence_oracle",
    "taylor_vanishing_bound",
    "vanishing_radius",
    "verify_counterexample",
    "verify_gorny_empirical",
    "__version__",
]
