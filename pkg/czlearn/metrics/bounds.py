"""High-probability regret and violation bounds of the constrained contextual learner,
evaluated with the information gains realized during a run.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from czlearn.experts import expert_b_value
from czlearn.gp import ConfidenceParams, beta
from czlearn.strategy import ExpertRuleKind


def c1_constant(noise_variance: float) -> float:
    """Constant `C1 = 8 / ln(1 + 1 / sigma^2)` of the estimation terms."""
    if not noise_variance > 0:
        raise ValueError(f"Noise variance must be positive, got {noise_variance}")
    return float(8.0 / np.log1p(1.0 / noise_variance))


def default_b_value(num_rounds: int) -> float:
    """Worst-case value `5/2 + 3/2 ln(1 + T)` of the AdaNormalHedge constant `B`."""
    return float(2.5 + 1.5 * np.log1p(num_rounds))


def realized_b_value(magnitudes: Sequence[np.ndarray], num_rounds: int) -> float:
    """Largest AdaNormalHedge constant `B` over the expert states of a learner, the
    worst-case value if there is none.
    """
    if len(magnitudes) == 0:
        return default_b_value(num_rounds)
    return max(expert_b_value(c) for c in magnitudes)


def ada_expert_term(
    num_rounds: int, num_actions: int, num_contexts: int, b_value: float
) -> float:
    """`sqrt(3 |Z| T (ln K + ln B + ln(1 + ln K)))`."""
    log_k = np.log(num_actions)
    return float(
        np.sqrt(
            3.0 * num_contexts * num_rounds * (log_k + np.log(b_value) + np.log1p(log_k))
        )
    )


def hedge_expert_term(num_rounds: int, num_actions: int, num_contexts: int) -> float:
    """`sqrt(|Z| T ln K)`."""
    return float(np.sqrt(num_contexts * num_rounds * np.log(num_actions)))


def sampling_term(num_rounds: int, failure_prob: float) -> float:
    """`sqrt(T / 2 ln(2 / delta))`, bounding the deviation of the sampled actions."""
    return float(np.sqrt(num_rounds / 2.0 * np.log(2.0 / failure_prob)))


def estimation_term(
    params: ConfidenceParams, noise_variance: float, num_rounds: int, info_gain: float
) -> float:
    """`C1 * beta * sqrt(T gamma)`, bounding the cumulative width of the confidence
    bounds of a function.
    """
    width = beta(params, info_gain)
    return float(c1_constant(noise_variance) * width * np.sqrt(num_rounds * info_gain))


@dataclass(frozen=True)
class BoundEvaluation:
    """Values of the high-probability bounds of a learner."""

    regret: float
    """Bound on the constrained contextual regret."""
    violations: tuple[float, ...]
    """Bound on the cumulative violation of every constraint."""
    expert_term: float
    """Contribution of the expert rule to the regret bound."""
    b_value: float | None
    """AdaNormalHedge constant `B` the bound was evaluated with, if any."""
    infinite_context_regret: float | None = None
    """Regret bound over a continuous context space, if it was evaluated."""


def learner_bounds(
    num_rounds: int,
    num_actions: int,
    num_contexts: int,
    reward_confidence: ConfidenceParams,
    reward_noise_variance: float,
    reward_info_gain: float,
    constraint_confidence: Sequence[ConfidenceParams] = (),
    constraint_noise_variances: Sequence[float] = (),
    constraint_info_gains: Sequence[float] = (),
    magnitudes: Sequence[np.ndarray] | None = None,
    expert_rule: ExpertRuleKind | str = ExpertRuleKind.ADA_NORMAL_HEDGE,
) -> BoundEvaluation:
    """Evaluate the regret and violation bounds of the constrained contextual learner.

    The regret bound is the sum of the expert term (AdaNormalHedge:
    `sqrt(3 |Z| T (ln K + ln B + ln(1 + ln K)))`, reduced Hedge: `sqrt(|Z| T ln K)`),
    the sampling term `sqrt(T / 2 ln(2 / delta))` and the reward estimation term
    `C1 * beta_0 * sqrt(T gamma_0)`. The bound on constraint `m` is its estimation
    term `C1 * beta_m * sqrt(T gamma_m)`. With `|Z| = 1` the static game bound is
    recovered.

    Args:
        num_rounds (int): Number of rounds `T`.
        num_actions (int): Number of actions `K`.
        num_contexts (int): Number of contexts `|Z|` (or of epsilon-net balls).
        reward_confidence (ConfidenceParams): Confidence parameters of the reward.
        reward_noise_variance (float): Noise variance of the reward GP.
        reward_info_gain (float): Information gain realized by the reward GP.
        constraint_confidence (Sequence[ConfidenceParams], optional): Confidence
            parameters of every constraint. Defaults to `()`.
        constraint_noise_variances (Sequence[float], optional): Noise variance of every
            constraint GP. Defaults to `()`.
        constraint_info_gains (Sequence[float], optional): Information gain realized by
            every constraint GP. Defaults to `()`.
        magnitudes (Sequence[np.ndarray] | None, optional): Cumulative magnitudes of
            every expert state, used to evaluate `B`. The worst-case `B` is used if
            `None` or empty. Defaults to `None`.
        expert_rule (ExpertRuleKind | str, optional): Expert rule of the learner.
            Defaults to `ExpertRuleKind.ADA_NORMAL_HEDGE`.

    Returns:
        BoundEvaluation: The evaluated bounds.
    """
    if num_rounds < 0 or num_actions < 1 or num_contexts < 1:
        raise ValueError("Invalid number of rounds, actions or contexts.")
    if not (
        len(constraint_confidence)
        == len(constraint_noise_variances)
        == len(constraint_info_gains)
    ):
        raise ValueError("Expected one confidence, noise and info gain per constraint.")
    expert_rule = ExpertRuleKind(expert_rule)
    b_value: float | None = None
    if expert_rule == ExpertRuleKind.ADA_NORMAL_HEDGE:
        b_value = realized_b_value(magnitudes or [], num_rounds)
        expert = ada_expert_term(num_rounds, num_actions, num_contexts, b_value)
    else:
        expert = hedge_expert_term(num_rounds, num_actions, num_contexts)

    regret = (
        expert
        + sampling_term(num_rounds, reward_confidence.failure_prob)
        + estimation_term(
            reward_confidence, reward_noise_variance, num_rounds, reward_info_gain
        )
    )
    violations = tuple(
        estimation_term(params, variance, num_rounds, gain)
        for params, variance, gain in zip(
            constraint_confidence, constraint_noise_variances, constraint_info_gains
        )
    )
    return BoundEvaluation(
        regret=regret, violations=violations, expert_term=expert, b_value=b_value
    )


def infinite_context_regret_bound(
    num_rounds: int,
    num_actions: int,
    dim: int,
    lipschitz_product: float,
    reward_confidence: ConfidenceParams,
    reward_noise_variance: float,
    reward_info_gain: float,
    b_value: float | None = None,
) -> float:
    """Regret bound of the epsilon-net learner over `[0, 1]^d` with the default radius:

    `(L_r L_p)^(d / (d + 2)) T^((d + 1) / (d + 2)) (1 + sqrt(3 (ln K + ln B +
    ln(1 + ln K))))` plus the sampling and reward estimation terms.

    Args:
        num_rounds (int): Number of rounds `T`.
        num_actions (int): Number of actions `K`.
        dim (int): Dimension `d` of the context space.
        lipschitz_product (float): Product `L_r L_p` of the Lipschitz constants of the
            reward and of the optimal policy.
        reward_confidence (ConfidenceParams): Confidence parameters of the reward.
        reward_noise_variance (float): Noise variance of the reward GP.
        reward_info_gain (float): Information gain realized by the reward GP.
        b_value (float | None, optional): AdaNormalHedge constant `B`, worst case if
            `None`. Defaults to `None`.

    Returns:
        float: The bound.
    """
    if not lipschitz_product > 0 or dim < 1:
        raise ValueError("Lipschitz product and dimension must be positive.")
    b_value = default_b_value(num_rounds) if b_value is None else b_value
    log_k = np.log(num_actions)
    discretization = lipschitz_product ** (dim / (dim + 2)) * num_rounds ** (
        (dim + 1) / (dim + 2)
    )
    expert = np.sqrt(3.0 * (log_k + np.log(b_value) + np.log1p(log_k)))
    return float(
        discretization * (1.0 + expert)
        + sampling_term(num_rounds, reward_confidence.failure_prob)
        + estimation_term(
            reward_confidence, reward_noise_variance, num_rounds, reward_info_gain
        )
    )
