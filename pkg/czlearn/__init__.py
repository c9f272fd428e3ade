"""czlearn root package: no-regret, no-violation learning in repeated contextual games
with unknown constraints.

Everything except the `czlearn.experiment` and `czlearn.cli` packages is imported here,
so that the kernels, GP models, expert rules, players, games and metrics are available
directly from `czlearn`.
"""

__version__ = "0.1.0"
"""czlearn package version."""

from czlearn.experts import (
    AdaNormalHedgeRule,
    ExpertRule,
    HedgeState,
    ReducedHedgeRule,
    SleepingExpertState,
    ada_log_weights,
    ada_predict,
    ada_update,
    ada_weight,
    expert_b_value,
    hedge_predict,
    hedge_step_size,
    hedge_update,
    sleeping_regret_bound,
    sleeping_reward_completion,
)
from czlearn.game import (
    GENERATOR_SCHEME,
    ContextSchedule,
    ContinuousContextSpace,
    FiniteContextSpace,
    FixedContexts,
    FunctionGame,
    GameDefinition,
    GameDocument,
    GeneratorParams,
    RoundRecord,
    RunStatus,
    Simulation,
    TabularGame,
    Trajectory,
    UniformBoxContexts,
    UniformContexts,
    context_key,
    context_schedule,
    generate_random_game,
    run,
)
from czlearn.gp import ConfidenceParams, GpModel, beta, lcb, ucb
from czlearn.grabber import Grabber
from czlearn.kernels import (
    Kernel,
    KernelRegistry,
    Matern,
    Polynomial,
    Product,
    SquaredExponential,
)
from czlearn.metrics import (
    BoundEvaluation,
    CceCertificate,
    EmpiricalPolicy,
    MetricsReport,
    RegretConvention,
    best_feasible_policy,
    c1_constant,
    cce_epsilon,
    compute_report,
    constrained_regret,
    cumulative_violations,
    empirical_policy,
    infinite_context_regret_bound,
    learner_bounds,
)
from czlearn.parsers import JSONParser, Parser, ParserRegistry, YAMLParser
from czlearn.strategy import (
    ActionChoice,
    Algorithm,
    EpsilonNetContexts,
    EpsilonNetRouter,
    ExpertRuleKind,
    Feedback,
    FiniteContexts,
    FiniteRouter,
    GpPlayer,
    InfeasibilityDeclared,
    Player,
    PlayerConfig,
    PooledRouter,
    RandomPlayer,
    check_infeasibility,
    gpmw_step,
    make_player,
    renormalize,
)
