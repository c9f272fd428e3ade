"""Base class for the expert rules driving the per-context distributions."""

from abc import ABC, abstractmethod

import numpy as np

from czlearn.experts.ada_normal_hedge import (
    SleepingExpertState,
    ada_predict,
    ada_update,
)
from czlearn.experts.hedge import (
    HedgeState,
    hedge_predict,
    hedge_update,
    sleeping_reward_completion,
)


class ExpertRule(ABC):
    """Stateful wrapper around an expert algorithm, owned by a single context (or
    context ball) of a single player.

    Subclasses should implement the `predict` and `update` methods.
    """

    @abstractmethod
    def predict(self) -> np.ndarray:
        """Get the current unrestricted distribution `p` over the experts."""
        pass

    @abstractmethod
    def update(
        self,
        awake: np.ndarray,
        ucb_rewards: np.ndarray,
        probs: np.ndarray,
        sampling_dist: np.ndarray,
    ) -> None:
        """Update the rule after a round.

        Args:
            awake (np.ndarray): Boolean mask of the experts that were available.
            ucb_rewards (np.ndarray): Optimistic reward estimate of every expert.
            probs (np.ndarray): Unrestricted distribution predicted this round.
            sampling_dist (np.ndarray): Distribution actually sampled from, i.e.
                `probs` restricted to the awake experts.
        """
        pass


class AdaNormalHedgeRule(ExpertRule):
    """Sleeping-expert AdaNormalHedge, rewards are clamped optimistic estimates."""

    def __init__(self, num_experts: int) -> None:
        super().__init__()
        self._state = SleepingExpertState.fresh(num_experts)

    @property
    def state(self) -> SleepingExpertState:
        """Current regrets and magnitudes."""
        return self._state

    def predict(self) -> np.ndarray:
        return ada_predict(self._state)

    def update(
        self,
        awake: np.ndarray,
        ucb_rewards: np.ndarray,
        probs: np.ndarray,
        sampling_dist: np.ndarray,
    ) -> None:
        rewards = np.clip(ucb_rewards, 0.0, 1.0)
        self._state = ada_update(self._state, awake, rewards, sampling_dist)


class ReducedHedgeRule(ExpertRule):
    """Full-information Hedge fed with sleeping-completed reward vectors."""

    def __init__(self, num_experts: int) -> None:
        super().__init__()
        self._state = HedgeState.fresh(num_experts)

    @property
    def state(self) -> HedgeState:
        """Current log-weights."""
        return self._state

    def predict(self) -> np.ndarray:
        return hedge_predict(self._state)

    def update(
        self,
        awake: np.ndarray,
        ucb_rewards: np.ndarray,
        probs: np.ndarray,
        sampling_dist: np.ndarray,
    ) -> None:
        completed = sleeping_reward_completion(ucb_rewards, awake, probs)
        self._state = hedge_update(self._state, completed)
