"""Package for the oracle-side evaluation of simulated runs."""

from czlearn.metrics.bounds import (
    BoundEvaluation,
    ada_expert_term,
    c1_constant,
    default_b_value,
    estimation_term,
    hedge_expert_term,
    infinite_context_regret_bound,
    learner_bounds,
    realized_b_value,
    sampling_term,
)
from czlearn.metrics.equilibrium import (
    CceCertificate,
    EmpiricalPolicy,
    JointAction,
    cce_epsilon,
    empirical_policy,
)
from czlearn.metrics.regret import (
    RegretConvention,
    best_feasible_policy,
    constrained_regret,
    cumulative_violations,
)
from czlearn.metrics.report import (
    MetricsReport,
    compute_report,
    evaluate_player_bounds,
    has_bounds,
)
