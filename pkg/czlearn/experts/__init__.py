"""Package for sleeping-expert and expert update rules."""

from czlearn.experts.ada_normal_hedge import (
    SleepingExpertState,
    ada_log_weights,
    ada_predict,
    ada_update,
    ada_weight,
    expert_b_value,
    sleeping_regret_bound,
)
from czlearn.experts.base import AdaNormalHedgeRule, ExpertRule, ReducedHedgeRule
from czlearn.experts.hedge import (
    HedgeState,
    hedge_predict,
    hedge_step_size,
    hedge_update,
    sleeping_reward_completion,
)
