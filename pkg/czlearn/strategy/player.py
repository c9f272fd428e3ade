"""Players of a repeated contextual game: the GP-based learners and the random
baseline.
"""

import warnings
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import partial
from typing import Any

import numpy as np

from czlearn.experts import (
    AdaNormalHedgeRule,
    ReducedHedgeRule,
    SleepingExpertState,
)
from czlearn.gp import GpModel, beta, lcb, ucb
from czlearn.strategy.config import (
    Algorithm,
    EpsilonNetContexts,
    ExpertRuleKind,
    FiniteContexts,
    PlayerConfig,
)
from czlearn.strategy.router import (
    ContextRouter,
    EpsilonNetRouter,
    FiniteRouter,
    PooledRouter,
    RuleFactory,
)

MIN_NOISE_VARIANCE = 1e-6
"""Lower bound of the noise variance of the GP models of the learners."""


class InfeasibilityDeclared(RuntimeError):
    """Raised by a learner when no action is feasible with respect to the lower
    confidence bounds of its constraints.
    """

    def __init__(self, player: int, round_: int) -> None:
        super().__init__(f"Player {player} declared infeasibility at round {round_}.")
        self.player = player
        self.round = round_


@dataclass(frozen=True)
class Feedback:
    """Feedback delivered to a player at the end of a round: its own noisy reward, its
    own noisy constraint values and the actions played by the opponents. Contains no
    oracle-side values.
    """

    own_action: int
    """Action played by the player."""
    opponents_actions: tuple[int, ...]
    """Actions played by the other players, in player order."""
    reward: float
    """Noisy reward of the player."""
    constraints: tuple[float, ...] = ()
    """Noisy value of every constraint of the player."""


@dataclass(frozen=True)
class ActionChoice:
    """Action selected by a player together with the diagnostics of the selection."""

    action: int
    """Index of the selected action."""
    probs: np.ndarray
    """Unrestricted distribution `p` predicted by the expert rule."""
    sampling_dist: np.ndarray
    """Distribution `p_bar` the action was sampled from."""
    mask: np.ndarray
    """Estimated feasibility of every action."""
    route: int
    """Routing key of the context (context id or ball index)."""


def check_infeasibility(mask: np.ndarray) -> bool:
    """Whether a feasibility mask has no feasible action."""
    return not bool(np.any(mask))


def renormalize(probs: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Restrict a distribution to the feasible actions and renormalize it.

    Args:
        probs (np.ndarray): Probability vector `p`.
        mask (np.ndarray): Boolean feasibility mask.

    Returns:
        np.ndarray: `p_bar` proportional to `p * mask`, uniform over the feasible
            actions if they carry no mass.

    Raises:
        ValueError: If no action is feasible.
    """
    mask = np.asarray(mask, dtype=bool)
    if check_infeasibility(mask):
        raise ValueError("Cannot renormalize a distribution over an empty feasible set.")
    masked = np.where(mask, np.asarray(probs, dtype=np.float64), 0.0)
    total = masked.sum()
    if total <= 0:
        warnings.warn(
            "Feasible actions carry no probability mass, falling back to uniform.",
            RuntimeWarning,
        )
        return mask / mask.sum()
    return masked / total


def sample_action(dist: np.ndarray, rng: np.random.Generator) -> int:
    """Inverse-CDF sampling over the action indices in ascending order."""
    cdf = np.cumsum(dist)
    idx = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    if idx >= len(dist) or dist[idx] <= 0:
        idx = int(np.flatnonzero(dist > 0)[-1])
    return idx


class Player(ABC):
    """Base class for the players of a repeated game.

    Each round the engine calls `select_action` with the revealed context, then
    `observe_feedback` with the same context and the player's own feedback.
    """

    def __init__(self, index: int, num_actions: int, seed: Any = None) -> None:
        """
        Args:
            index (int): Zero-based index of the player in the game.
            num_actions (int): Number of actions of the player.
            seed (Any, optional): Seed (or `SeedSequence`) of the player's random
                number generator. Defaults to `None`.
        """
        super().__init__()
        self._index = index
        self._num_actions = num_actions
        self._rng = np.random.default_rng(seed)
        self._rounds = 0

    @property
    def index(self) -> int:
        """Zero-based index of the player."""
        return self._index

    @property
    def num_actions(self) -> int:
        """Number of actions of the player."""
        return self._num_actions

    @property
    def rounds(self) -> int:
        """Number of rounds in which the player selected an action."""
        return self._rounds

    @abstractmethod
    def select_action(self, context: Any) -> ActionChoice:
        """Select an action for the revealed context.

        Args:
            context (Any): Context of the round.

        Returns:
            ActionChoice: The selected action and its diagnostics.

        Raises:
            InfeasibilityDeclared: If the player declares the game infeasible.
        """
        pass

    @abstractmethod
    def observe_feedback(self, context: Any, feedback: Feedback) -> None:
        """Update the player with the feedback of the round.

        Args:
            context (Any): Context of the round.
            feedback (Feedback): Feedback of the player.
        """
        pass


class RandomPlayer(Player):
    """Baseline playing a uniformly random action every round."""

    def select_action(self, context: Any) -> ActionChoice:
        self._rounds += 1
        dist = np.full(self._num_actions, 1.0 / self._num_actions)
        mask = np.ones(self._num_actions, dtype=bool)
        action = sample_action(dist, self._rng)
        return ActionChoice(action, dist, dist, mask, 0)

    def observe_feedback(self, context: Any, feedback: Feedback) -> None:
        pass


class GpPlayer(Player):
    """Learner keeping a GP model of its reward over `(a_1, ..., a_N, z)` and one GP
    model per constraint over `(a_i, z)`.

    Every round it routes the context to an expert rule, estimates the feasible
    actions with the constraint LCBs (declaring infeasibility if there is none),
    samples from the rule's distribution restricted to them, and finally feeds the rule
    with the clamped reward UCBs of every action against the observed opponents.
    """

    def __init__(self, config: PlayerConfig, index: int, seed: Any = None) -> None:
        """
        Args:
            config (PlayerConfig): Configuration of the player.
            index (int): Zero-based index of the player in the game.
            seed (Any, optional): Seed (or `SeedSequence`) of the player's random
                number generator. Defaults to `None`.
        """
        if config.algorithm == Algorithm.RANDOM:
            raise ValueError("Use `RandomPlayer` for the random baseline.")
        if not 0 <= index < config.num_players:
            raise ValueError(f"Player index {index} out of range.")
        super().__init__(index, config.num_actions, seed)
        self._config = config
        self._router = self._make_router()
        self._pending: ActionChoice | None = None
        self._clamp_events = 0

        assert config.reward_kernel is not None
        assert config.constraint_kernels is not None
        assert config.constraint_confidence is not None
        ctx_dim = config.context_features
        self._reward_gp = GpModel(
            config.reward_kernel,
            max(config.reward_confidence.noise_scale**2, MIN_NOISE_VARIANCE),
            input_dim=config.num_players + ctx_dim,
        )
        self._constraint_gps = [
            GpModel(
                kernel,
                max(params.noise_scale**2, MIN_NOISE_VARIANCE),
                input_dim=1 + ctx_dim,
            )
            for kernel, params in zip(
                config.constraint_kernels, config.constraint_confidence
            )
        ]

    def _make_router(self) -> ContextRouter:
        config = self._config
        k = config.num_actions
        if config.effective_expert_rule == ExpertRuleKind.ADA_NORMAL_HEDGE:
            factory: RuleFactory = partial(AdaNormalHedgeRule, k)
        else:
            factory = partial(ReducedHedgeRule, k)
        if not config.algorithm.contextual:
            return PooledRouter(factory)
        mode = config.context_mode
        if isinstance(mode, FiniteContexts):
            return FiniteRouter(factory, mode.num_contexts)
        assert isinstance(mode, EpsilonNetContexts)
        return EpsilonNetRouter(factory, mode.dim, mode.resolve_epsilon())

    @property
    def config(self) -> PlayerConfig:
        """Configuration of the player."""
        return self._config

    @property
    def router(self) -> ContextRouter:
        """Context router of the player."""
        return self._router

    @property
    def reward_gp(self) -> GpModel:
        """GP model of the reward."""
        return self._reward_gp

    @property
    def constraint_gps(self) -> list[GpModel]:
        """GP models of the constraints."""
        return list(self._constraint_gps)

    @property
    def clamp_events(self) -> int:
        """Number of reward UCBs clamped at 0 so far."""
        return self._clamp_events

    @property
    def info_gains(self) -> tuple[float, ...]:
        """Realized information gain of the reward GP followed by the constraint GPs."""
        return (self._reward_gp.info_gain,) + tuple(
            gp.info_gain for gp in self._constraint_gps
        )

    def expert_magnitudes(self) -> list[np.ndarray]:
        """Cumulative magnitudes `C` of every AdaNormalHedge state of the router."""
        result = []
        for rule in self._router.rules.values():
            if isinstance(rule, AdaNormalHedgeRule):
                state: SleepingExpertState = rule.state
                result.append(state.magnitudes.copy())
        return result

    def _constraint_inputs(self, context: Any) -> np.ndarray:
        ctx = self._config.encode_context(context)
        actions = np.arange(self._num_actions, dtype=np.float64)[:, None]
        return np.hstack([actions, np.tile(ctx, (self._num_actions, 1))])

    def _reward_inputs(self, context: Any, joint_action: tuple[int, ...]) -> np.ndarray:
        ctx = self._config.encode_context(context)
        joint = np.tile(np.asarray(joint_action, dtype=np.float64), (self._num_actions, 1))
        joint[:, self._index] = np.arange(self._num_actions)
        return np.hstack([joint, np.tile(ctx, (self._num_actions, 1))])

    def feasible_mask(self, context: Any) -> np.ndarray:
        """Estimate the feasible actions at a context.

        Args:
            context (Any): Context of the round.

        Returns:
            np.ndarray: Boolean vector, entry `a` is true iff the LCB of every
                constraint at `(a, context)` is non-positive. All true for the
                unconstrained algorithms or when there are no constraints.
        """
        mask = np.ones(self._num_actions, dtype=bool)
        if not self._config.algorithm.constrained:
            return mask
        assert self._config.constraint_confidence is not None
        inputs = self._constraint_inputs(context)
        for gp, params in zip(self._constraint_gps, self._config.constraint_confidence):
            width = beta(params, gp.info_gain)
            mask &= lcb(gp, inputs, width) <= 0
        return mask

    def select_action(self, context: Any) -> ActionChoice:
        if self._pending is not None:
            raise RuntimeError("Previous round's feedback was never observed.")
        self._rounds += 1
        route, rule = self._router.route(context)
        probs = rule.predict()
        mask = self.feasible_mask(context)
        if check_infeasibility(mask):
            raise InfeasibilityDeclared(self._index, self._rounds)
        sampling_dist = renormalize(probs, mask)
        action = sample_action(sampling_dist, self._rng)
        self._pending = ActionChoice(action, probs, sampling_dist, mask, route)
        return self._pending

    def observe_feedback(self, context: Any, feedback: Feedback) -> None:
        choice = self._pending
        if choice is None:
            raise RuntimeError("Feedback observed before selecting an action.")
        if feedback.own_action != choice.action:
            raise ValueError("Feedback refers to an action that was not selected.")
        if len(feedback.opponents_actions) != self._config.num_players - 1:
            raise ValueError(
                f"Expected {self._config.num_players - 1} opponents' actions, "
                f"got {len(feedback.opponents_actions)}"
            )
        if len(feedback.constraints) != self._config.num_constraints:
            raise ValueError(
                f"Expected {self._config.num_constraints} constraint values, "
                f"got {len(feedback.constraints)}"
            )
        self._pending = None

        joint = list(feedback.opponents_actions)
        joint.insert(self._index, feedback.own_action)
        candidates = self._reward_inputs(context, tuple(joint))
        width = beta(self._config.reward_confidence, self._reward_gp.info_gain)
        ucb_rewards = ucb(self._reward_gp, candidates, width)
        clamped = int(np.sum(ucb_rewards < 0))
        if clamped > 0 and self._clamp_events == 0:
            warnings.warn(
                f"Player {self._index} clamped a negative reward UCB to 0.",
                RuntimeWarning,
            )
        self._clamp_events += clamped

        rule = self._router.rule(choice.route)
        rule.update(choice.mask, ucb_rewards, choice.probs, choice.sampling_dist)

        self._reward_gp.add_observation(candidates[feedback.own_action], feedback.reward)
        if self._config.algorithm.constrained:
            inputs = self._constraint_inputs(context)[feedback.own_action]
            for gp, value in zip(self._constraint_gps, feedback.constraints):
                gp.add_observation(inputs, value)


def gpmw_step(player: GpPlayer, context: Any) -> int:
    """Action of an unconstrained GPMW-style learner, selected without any feasibility
    filtering.

    Args:
        player (GpPlayer): A player running `gpmw` or `z_gpmw`.
        context (Any): Context of the round.

    Returns:
        int: The selected action.
    """
    if player.config.algorithm.constrained:
        raise ValueError(
            f"Player runs the constrained '{player.config.algorithm.value}' algorithm."
        )
    return player.select_action(context).action


def make_player(config: PlayerConfig, index: int, seed: Any = None) -> Player:
    """Build the player running the configured algorithm."""
    if config.algorithm == Algorithm.RANDOM:
        return RandomPlayer(index, config.num_actions, seed)
    return GpPlayer(config, index, seed)
