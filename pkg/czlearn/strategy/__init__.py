"""Package for the learners of repeated contextual games and their baselines."""

from czlearn.strategy.config import (
    Algorithm,
    ContextMode,
    EpsilonNetContexts,
    ExpertRuleKind,
    FiniteContexts,
    PlayerConfig,
    default_constraint_kernel,
    default_epsilon,
    default_reward_kernel,
)
from czlearn.strategy.player import (
    ActionChoice,
    Feedback,
    GpPlayer,
    InfeasibilityDeclared,
    Player,
    RandomPlayer,
    check_infeasibility,
    gpmw_step,
    make_player,
    renormalize,
    sample_action,
)
from czlearn.strategy.router import (
    ContextRouter,
    EpsilonNetRouter,
    FiniteRouter,
    PooledRouter,
    RuleFactory,
)
