"""Collection of all the oracle-side metrics of a simulated run."""

from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field

import numpy as np

from czlearn.game import ContinuousContextSpace, GameDefinition, RunStatus, Trajectory
from czlearn.metrics.bounds import (
    BoundEvaluation,
    infinite_context_regret_bound,
    learner_bounds,
)
from czlearn.metrics.equilibrium import CceCertificate, cce_epsilon
from czlearn.metrics.regret import (
    RegretConvention,
    best_feasible_policy,
    constrained_regret,
    cumulative_violations,
)
from czlearn.strategy import (
    EpsilonNetContexts,
    EpsilonNetRouter,
    FiniteContexts,
    GpPlayer,
    Player,
    PooledRouter,
)


@dataclass
class MetricsReport:
    """Metrics of a simulated run. Regret entries are `None` for the players that have
    no feasible action at some realized context, the certificate is `None` if any
    player is in that situation or if no round was played.
    """

    status: RunStatus
    num_rounds: int
    regret: list[np.ndarray | None]
    """Regret trajectory of every player."""
    violations: list[np.ndarray]
    """Cumulative violation trajectories of every player, shape `(T, M_i)`."""
    best_policy: list[dict[Hashable, int] | None]
    """Best feasible action of every realized context, for every player."""
    cce: CceCertificate | None
    bounds: dict[int, BoundEvaluation] = field(default_factory=dict)
    """Bounds of the players running a constrained learner, see `has_bounds`."""
    clamp_events: tuple[int, ...] = ()
    """Number of clamped reward UCBs of every player."""
    infeasible_player: int | None = None
    infeasible_round: int | None = None

    def final_regret(self, player: int) -> float:
        """Regret of a player after the last round, NaN if undefined."""
        regret = self.regret[player]
        if regret is None or len(regret) == 0:
            return float("nan")
        return float(regret[-1])

    def final_violations(self, player: int) -> np.ndarray:
        """Cumulative violation of every constraint of a player after the last round."""
        violations = self.violations[player]
        if violations.shape[0] == 0:
            return np.zeros(violations.shape[1])
        return violations[-1].copy()


def _num_routed_contexts(player: GpPlayer) -> int:
    if isinstance(player.router, PooledRouter):
        return 1
    mode = player.config.context_mode
    if isinstance(mode, FiniteContexts):
        return mode.num_contexts
    assert isinstance(player.router, EpsilonNetRouter)
    return max(1, len(player.router.centers))


def has_bounds(player: Player) -> bool:
    """Whether the bounds of a player are evaluated. The guarantees of the
    constrained learner that ignores the context hold against the best fixed action,
    so they only bound the constrained contextual regret on single-context games.
    """
    if not isinstance(player, GpPlayer) or not player.config.algorithm.constrained:
        return False
    if player.config.algorithm.contextual:
        return True
    mode = player.config.context_mode
    return isinstance(mode, FiniteContexts) and mode.num_contexts == 1


def evaluate_player_bounds(
    player: GpPlayer, num_rounds: int, lipschitz_product: float | None = None
) -> BoundEvaluation:
    """Evaluate the bounds of a learner with the information gains it realized.

    Args:
        player (GpPlayer): The learner, after the run.
        num_rounds (int): Number of rounds played.
        lipschitz_product (float | None, optional): Product of the Lipschitz constants
            of the reward and of the optimal policy. The infinite-context bound is only
            evaluated for epsilon-net learners when it is given. Defaults to `None`.

    Returns:
        BoundEvaluation: The evaluated bounds.
    """
    config = player.config
    assert config.constraint_confidence is not None
    gains = player.info_gains
    evaluation = learner_bounds(
        num_rounds,
        config.num_actions,
        _num_routed_contexts(player),
        config.reward_confidence,
        player.reward_gp.noise_variance,
        gains[0],
        constraint_confidence=config.constraint_confidence,
        constraint_noise_variances=[gp.noise_variance for gp in player.constraint_gps],
        constraint_info_gains=gains[1:],
        magnitudes=player.expert_magnitudes(),
        expert_rule=config.effective_expert_rule,
    )
    mode = config.context_mode
    if lipschitz_product is None or not isinstance(mode, EpsilonNetContexts):
        return evaluation
    infinite = infinite_context_regret_bound(
        num_rounds,
        config.num_actions,
        mode.dim,
        lipschitz_product,
        config.reward_confidence,
        player.reward_gp.noise_variance,
        gains[0],
        b_value=evaluation.b_value,
    )
    return BoundEvaluation(
        regret=evaluation.regret,
        violations=evaluation.violations,
        expert_term=evaluation.expert_term,
        b_value=evaluation.b_value,
        infinite_context_regret=infinite,
    )


def compute_report(
    trajectory: Trajectory,
    game: GameDefinition,
    players: Sequence[Player] = (),
    convention: RegretConvention | str = RegretConvention.FIXED,
    lipschitz_product: float | None = None,
    evaluate_bounds: bool = True,
) -> MetricsReport:
    """Compute every metric of a simulated run.

    Args:
        trajectory (Trajectory): The simulated trajectory.
        game (GameDefinition): Ground truth of the game.
        players (Sequence[Player], optional): The players after the run, used for the
            bounds and the clamp counters. Defaults to `()`.
        convention (RegretConvention | str, optional): Regret convention. Defaults to
            `RegretConvention.FIXED`.
        lipschitz_product (float | None, optional): Lipschitz product for the
            infinite-context bound. Defaults to `None`.
        evaluate_bounds (bool, optional): Whether to evaluate the bounds of the
            constrained contextual learners. Defaults to `True`.

    Returns:
        MetricsReport: The report.
    """
    regret: list[np.ndarray | None] = []
    policies: list[dict[Hashable, int] | None] = []
    violations: list[np.ndarray] = []
    for i in range(game.num_players):
        try:
            policies.append(best_feasible_policy(trajectory, game, i))
            regret.append(constrained_regret(trajectory, game, i, convention))
        except ValueError:
            policies.append(None)
            regret.append(None)
        violations.append(cumulative_violations(trajectory, game, i))

    cce = None
    if len(trajectory) > 0 and all(r is not None for r in regret):
        cce = cce_epsilon(trajectory, game)

    bounds: dict[int, BoundEvaluation] = {}
    if evaluate_bounds:
        for player in players:
            if not isinstance(player, GpPlayer) or not has_bounds(player):
                continue
            lipschitz = (
                lipschitz_product
                if isinstance(game.context_space, ContinuousContextSpace)
                else None
            )
            bounds[player.index] = evaluate_player_bounds(
                player, len(trajectory), lipschitz
            )

    clamps = tuple(
        p.clamp_events if isinstance(p, GpPlayer) else 0 for p in players
    )
    return MetricsReport(
        status=trajectory.status,
        num_rounds=len(trajectory),
        regret=regret,
        violations=violations,
        best_policy=policies,
        cce=cce,
        bounds=bounds,
        clamp_events=clamps,
        infeasible_player=trajectory.infeasible_player,
        infeasible_round=trajectory.infeasible_round,
    )
