"""Hedge (multiplicative weights) and the reduction from sleeping experts to a
full-information expert algorithm through reward completion.
"""

from dataclasses import dataclass
from typing import Self

import numpy as np
from scipy.special import softmax


@dataclass(frozen=True)
class HedgeState:
    """Log-weights of `K` experts and the number of updates received so far."""

    log_weights: np.ndarray
    """Log-weight of every expert, shape `(K,)`."""
    rounds_seen: int = 0
    """Number of updates received so far."""

    def __post_init__(self) -> None:
        log_weights = np.asarray(self.log_weights, dtype=np.float64).copy()
        if log_weights.ndim != 1 or not np.all(np.isfinite(log_weights)):
            raise ValueError("Log-weights must be a vector of finite values.")
        if self.rounds_seen < 0:
            raise ValueError(f"Rounds seen must be non-negative, got {self.rounds_seen}")
        log_weights.flags.writeable = False
        object.__setattr__(self, "log_weights", log_weights)

    @classmethod
    def fresh(cls, num_experts: int) -> Self:
        """State of `num_experts` experts with no history."""
        if num_experts < 1:
            raise ValueError(f"Number of experts must be positive, got {num_experts}")
        return cls(np.zeros(num_experts))

    @property
    def num_experts(self) -> int:
        """Number of experts `K`."""
        return self.log_weights.shape[0]


def hedge_step_size(num_experts: int, rounds: int) -> float:
    """Step size `2 sqrt(ln K / t)` at the `t`-th update."""
    return float(2.0 * np.sqrt(np.log(num_experts) / rounds))


def hedge_predict(state: HedgeState) -> np.ndarray:
    """Softmax of the log-weights."""
    return softmax(state.log_weights)


def hedge_update(state: HedgeState, rewards: np.ndarray) -> HedgeState:
    """Multiplicative-weights update `p <- p * exp(eta * rewards)`.

    Args:
        state (HedgeState): Current state of the experts.
        rewards (np.ndarray): Reward of every expert, in [0, 1].

    Returns:
        HedgeState: The updated state.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    if rewards.shape != (state.num_experts,):
        raise ValueError(f"Expected a reward vector of length {state.num_experts}.")
    rounds = state.rounds_seen + 1
    eta = hedge_step_size(state.num_experts, rounds)
    return HedgeState(state.log_weights + eta * rewards, rounds)


def sleeping_reward_completion(
    ucb_rewards: np.ndarray, awake: np.ndarray, probs: np.ndarray
) -> np.ndarray:
    """Complete a reward vector for a full-information expert algorithm.

    Awake entries get their optimistic reward clamped to [0, 1], asleep entries all
    get `sum_{awake a} p_bar[a] * r[a]`, where `p_bar` is `probs` renormalized to the
    awake set. As a result, `<probs, r> = <p_bar, r>`.

    Args:
        ucb_rewards (np.ndarray): Optimistic reward estimates, shape `(K,)`.
        awake (np.ndarray): Boolean mask of the awake experts, shape `(K,)`.
        probs (np.ndarray): Unrestricted prediction of the expert algorithm.

    Returns:
        np.ndarray: The completed reward vector in [0, 1]^K.

    Raises:
        ValueError: If no expert is awake.
    """
    awake = np.asarray(awake, dtype=bool)
    rewards = np.clip(np.asarray(ucb_rewards, dtype=np.float64), 0.0, 1.0)
    if not np.any(awake):
        raise ValueError("Reward completion requires at least one awake expert.")
    if np.all(awake):
        return rewards
    masked = np.where(awake, np.asarray(probs, dtype=np.float64), 0.0)
    total = masked.sum()
    if total > 0:
        p_bar = masked / total
    else:
        p_bar = awake / awake.sum()
    fill = float(p_bar @ np.where(awake, rewards, 0.0))
    return np.where(awake, rewards, fill)
