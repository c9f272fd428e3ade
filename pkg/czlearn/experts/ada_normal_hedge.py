"""AdaNormalHedge for the sleeping-expert problem with a uniform prior."""

from dataclasses import dataclass
from typing import Self

import numpy as np

_LOG_SPACE_THRESHOLD = 500.0


@dataclass(frozen=True)
class SleepingExpertState:
    """Cumulative regrets `R` and cumulative magnitudes `C` of `K` sleeping experts."""

    regrets: np.ndarray
    """Cumulative regret of every expert, shape `(K,)`."""
    magnitudes: np.ndarray
    """Cumulative absolute regret increments of every expert, shape `(K,)`."""

    def __post_init__(self) -> None:
        regrets = np.asarray(self.regrets, dtype=np.float64).copy()
        magnitudes = np.asarray(self.magnitudes, dtype=np.float64).copy()
        if regrets.ndim != 1 or regrets.shape != magnitudes.shape:
            raise ValueError(
                "Regrets and magnitudes must be vectors of the same length, got "
                f"{regrets.shape} and {magnitudes.shape}"
            )
        if np.any(magnitudes < 0):
            raise ValueError("Magnitudes must be non-negative.")
        regrets.flags.writeable = False
        magnitudes.flags.writeable = False
        object.__setattr__(self, "regrets", regrets)
        object.__setattr__(self, "magnitudes", magnitudes)

    @classmethod
    def fresh(cls, num_experts: int) -> Self:
        """State of `num_experts` experts with no history."""
        if num_experts < 1:
            raise ValueError(f"Number of experts must be positive, got {num_experts}")
        return cls(np.zeros(num_experts), np.zeros(num_experts))

    @property
    def num_experts(self) -> int:
        """Number of experts `K`."""
        return self.regrets.shape[0]


def _exponents(regrets: np.ndarray, magnitudes: np.ndarray):
    denom = 3.0 * (magnitudes + 1.0)
    upper = np.maximum(regrets + 1.0, 0.0) ** 2 / denom
    lower = np.maximum(regrets - 1.0, 0.0) ** 2 / denom
    return upper, lower


def ada_log_weights(regrets: np.ndarray, magnitudes: np.ndarray) -> np.ndarray:
    """Natural logarithm of the AdaNormalHedge weights, `-inf` where a weight is 0.

    Args:
        regrets (np.ndarray): Cumulative regrets `R`.
        magnitudes (np.ndarray): Cumulative magnitudes `C`.

    Returns:
        np.ndarray: Log-weights, same shape as the inputs.
    """
    upper, lower = _exponents(np.asarray(regrets), np.asarray(magnitudes))
    log_w = np.full(upper.shape, -np.inf)
    positive = upper > 0
    # w = 1/2 exp(upper) (1 - exp(lower - upper)), with lower < upper where upper > 0
    log_w[positive] = (
        upper[positive]
        + np.log(-np.expm1(lower[positive] - upper[positive]))
        - np.log(2.0)
    )
    return log_w


def ada_weight(regret: float, magnitude: float) -> float:
    """AdaNormalHedge weight

    `w(R, C) = 1/2 (exp([R + 1]_+^2 / 3(C + 1)) - exp([R - 1]_+^2 / 3(C + 1)))`

    Args:
        regret (float): Cumulative regret `R`.
        magnitude (float): Non-negative cumulative magnitude `C`.

    Returns:
        float: The weight, 0 when `R <= -1`. Huge exponents are handled in log-space
            and may overflow to `inf`.
    """
    if magnitude < 0:
        raise ValueError(f"Magnitude must be non-negative, got {magnitude}")
    upper, lower = _exponents(np.array([regret]), np.array([magnitude]))
    if upper[0] <= _LOG_SPACE_THRESHOLD:
        return float(0.5 * (np.exp(upper[0]) - np.exp(lower[0])))
    log_w = ada_log_weights(np.array([regret]), np.array([magnitude]))[0]
    with np.errstate(over="ignore"):
        return float(np.exp(log_w))


def ada_predict(state: SleepingExpertState) -> np.ndarray:
    """Prediction `p` proportional to the AdaNormalHedge weights of every expert.

    Args:
        state (SleepingExpertState): Current state of the experts.

    Returns:
        np.ndarray: Probability vector of shape `(K,)`, uniform if every weight is 0.
    """
    log_w = ada_log_weights(state.regrets, state.magnitudes)
    if not np.any(np.isfinite(log_w)):
        return np.full(state.num_experts, 1.0 / state.num_experts)
    probs = np.exp(log_w - np.max(log_w))
    return probs / probs.sum()


def ada_update(
    state: SleepingExpertState,
    awake: np.ndarray,
    rewards: np.ndarray,
    sampling_dist: np.ndarray,
) -> SleepingExpertState:
    """Update the regrets and magnitudes of the awake experts.

    With `E = <sampling_dist, rewards>`, every awake expert `a` receives
    `R[a] += rewards[a] - E` and `C[a] += |rewards[a] - E|`. Asleep experts are left
    unchanged.

    Args:
        state (SleepingExpertState): Current state of the experts.
        awake (np.ndarray): Boolean mask of the awake experts, shape `(K,)`.
        rewards (np.ndarray): Reward of every expert, shape `(K,)`.
        sampling_dist (np.ndarray): Distribution used to play this round, supported
            only on awake experts.

    Returns:
        SleepingExpertState: The updated state.

    Raises:
        ValueError: If the shapes are inconsistent, the rewards are not finite or the
            sampling distribution assigns mass to an asleep expert.
    """
    awake = np.asarray(awake, dtype=bool)
    rewards = np.asarray(rewards, dtype=np.float64)
    sampling_dist = np.asarray(sampling_dist, dtype=np.float64)
    k = state.num_experts
    if awake.shape != (k,) or rewards.shape != (k,) or sampling_dist.shape != (k,):
        raise ValueError(f"Expected vectors of length {k}.")
    if not np.all(np.isfinite(rewards)):
        raise ValueError("Rewards must be finite.")
    if not np.any(awake):
        return state
    if np.any(sampling_dist[~awake] > 0):
        raise ValueError("Sampling distribution assigns mass to an asleep expert.")

    expected = float(sampling_dist @ rewards)
    delta = np.where(awake, rewards - expected, 0.0)
    return SleepingExpertState(
        state.regrets + delta, state.magnitudes + np.abs(delta)
    )


def sleeping_regret_bound(magnitudes: np.ndarray) -> np.ndarray:
    """Regret bound of AdaNormalHedge with a uniform prior for every expert:

    `sqrt(3 C[a] (ln K + ln B + ln(1 + ln K)))`, with
    `B = 1 + 3 / (2K) * sum_a (1 + ln(1 + C[a]))`.

    Args:
        magnitudes (np.ndarray): Cumulative magnitudes `C` at the horizon.

    Returns:
        np.ndarray: Bound on the sleeping regret of every expert.
    """
    magnitudes = np.asarray(magnitudes, dtype=np.float64)
    k = magnitudes.shape[0]
    log_k = np.log(k)
    b_value = expert_b_value(magnitudes)
    return np.sqrt(3.0 * magnitudes * (log_k + np.log(b_value) + np.log1p(log_k)))


def expert_b_value(magnitudes: np.ndarray) -> float:
    """The constant `B = 1 + 3 / (2K) * sum_a (1 + ln(1 + C[a]))`."""
    magnitudes = np.asarray(magnitudes, dtype=np.float64)
    k = magnitudes.shape[0]
    return float(1.0 + 1.5 / k * np.sum(1.0 + np.log1p(magnitudes)))
