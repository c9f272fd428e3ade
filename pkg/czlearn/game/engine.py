"""Round-by-round simulation of a repeated contextual game."""

from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from czlearn._register import LoopCallbackMixin
from czlearn.game.contexts import ContextSchedule
from czlearn.game.definition import GameDefinition, context_key
from czlearn.strategy import Feedback, InfeasibilityDeclared, Player


class RunStatus(str, Enum):
    """Terminal status of a simulation."""

    COMPLETED = "completed"
    INFEASIBILITY_DECLARED = "infeasibility_declared"


@dataclass(frozen=True)
class RoundRecord:
    """Everything that happened in a round. Noisy values equal true values plus the
    recorded noise draws.
    """

    round: int
    """One-based index of the round."""
    context: Any
    """Revealed context."""
    joint_action: tuple[int, ...]
    """Action of every player."""
    true_rewards: tuple[float, ...]
    """True reward of every player (oracle side)."""
    true_constraints: tuple[tuple[float, ...], ...]
    """True constraint values of every player (oracle side)."""
    reward_noise: tuple[float, ...]
    """Reward noise draw of every player."""
    constraint_noise: tuple[tuple[float, ...], ...]
    """Constraint noise draws of every player."""
    noisy_rewards: tuple[float, ...]
    """Reward observed by every player."""
    noisy_constraints: tuple[tuple[float, ...], ...]
    """Constraint values observed by every player."""


@dataclass
class Trajectory:
    """Ordered round records of a simulation and its terminal status."""

    num_actions: tuple[int, ...]
    """Number of actions of every player."""
    records: list[RoundRecord] = field(default_factory=list)
    """Records of the played rounds, contiguous from round 1."""
    status: RunStatus = RunStatus.COMPLETED
    """Terminal status."""
    infeasible_player: int | None = None
    """Player that declared infeasibility, if any."""
    infeasible_round: int | None = None
    """Round at which infeasibility was declared, if any."""

    def __len__(self) -> int:
        return len(self.records)

    @property
    def contexts(self) -> list[Any]:
        """Context of every recorded round."""
        return [r.context for r in self.records]

    @property
    def context_keys(self) -> list[Hashable]:
        """Hashable key of the context of every recorded round."""
        return [context_key(r.context) for r in self.records]

    @property
    def joint_actions(self) -> list[tuple[int, ...]]:
        """Joint action of every recorded round."""
        return [r.joint_action for r in self.records]


class Simulation(LoopCallbackMixin):
    """Simulation of a repeated contextual game between a list of players.

    At every round the context is revealed, every player selects an action, the true
    rewards and constraints are evaluated and perturbed with gaussian noise, and every
    player receives its own noisy reward, its own noisy constraint values and the
    opponents' actions. The simulation halts as soon as a player declares
    infeasibility.

    Progress can be followed by registering loop callbacks.
    """

    def __init__(
        self,
        game: GameDefinition,
        players: Sequence[Player],
        schedule: ContextSchedule,
        num_rounds: int,
        seed: Any = None,
    ) -> None:
        """
        Args:
            game (GameDefinition): Ground truth of the game.
            players (Sequence[Player]): One player per player of the game, in order.
            schedule (ContextSchedule): Schedule producing the contexts.
            num_rounds (int): Number of rounds `T`.
            seed (Any, optional): Seed (or `SeedSequence`) of the context schedule and
                of the noise. Defaults to `None`.
        """
        super().__init__()
        if len(players) != game.num_players:
            raise ValueError(
                f"Game has {game.num_players} players, got {len(players)} players."
            )
        for i, player in enumerate(players):
            if player.index != i:
                raise ValueError(f"Player at position {i} has index {player.index}.")
            if player.num_actions != game.num_actions[i]:
                raise ValueError(
                    f"Player {i} has {player.num_actions} actions, "
                    f"the game expects {game.num_actions[i]}."
                )
        if num_rounds < 0:
            raise ValueError(f"Number of rounds must be non-negative, got {num_rounds}")
        self._game = game
        self._players = list(players)
        self._schedule = schedule
        self._num_rounds = num_rounds
        if not isinstance(seed, np.random.SeedSequence):
            seed = np.random.SeedSequence(seed)
        context_seed, noise_seed = seed.spawn(2)
        self._context_seed = context_seed
        self._noise_seed = noise_seed

    def _play_round(
        self, t: int, context: Any, rng: np.random.Generator
    ) -> RoundRecord:
        game = self._game
        joint = tuple(p.select_action(context).action for p in self._players)

        true_r, true_g, noise_r, noise_g, noisy_r, noisy_g = [], [], [], [], [], []
        for i in range(game.num_players):
            reward = game.reward(i, joint, context)
            values = np.asarray(game.constraints(i, joint[i], context), dtype=np.float64)
            r_eps = float(rng.normal(0.0, game.reward_noise[i]))
            g_eps = [float(rng.normal(0.0, s)) for s in game.constraint_noise[i]]
            true_r.append(reward)
            true_g.append(tuple(float(v) for v in values))
            noise_r.append(r_eps)
            noise_g.append(tuple(g_eps))
            noisy_r.append(reward + r_eps)
            noisy_g.append(tuple(float(v) + e for v, e in zip(values, g_eps)))

        for i, player in enumerate(self._players):
            feedback = Feedback(
                own_action=joint[i],
                opponents_actions=joint[:i] + joint[i + 1 :],
                reward=noisy_r[i],
                constraints=noisy_g[i],
            )
            player.observe_feedback(context, feedback)

        return RoundRecord(
            round=t,
            context=context,
            joint_action=joint,
            true_rewards=tuple(true_r),
            true_constraints=tuple(true_g),
            reward_noise=tuple(noise_r),
            constraint_noise=tuple(noise_g),
            noisy_rewards=tuple(noisy_r),
            noisy_constraints=tuple(noisy_g),
        )

    def __call__(self) -> Trajectory:
        """Run the simulation.

        Returns:
            Trajectory: The recorded rounds and the terminal status.
        """
        trajectory = Trajectory(num_actions=self._game.num_actions)
        if self._num_rounds == 0:
            return trajectory
        contexts = self._schedule.sample(self._num_rounds, self._context_seed)
        rng = np.random.default_rng(self._noise_seed)
        rounds = range(1, self._num_rounds + 1)
        for _, t in self.loop(rounds, name="simulation"):
            try:
                record = self._play_round(t, contexts[t - 1], rng)
            except InfeasibilityDeclared as e:
                trajectory.status = RunStatus.INFEASIBILITY_DECLARED
                trajectory.infeasible_player = e.player
                trajectory.infeasible_round = t
                break
            trajectory.records.append(record)
        return trajectory


def run(
    game: GameDefinition,
    players: Sequence[Player],
    schedule: ContextSchedule,
    num_rounds: int,
    seed: Any = None,
) -> Trajectory:
    """Run a simulation, see `Simulation`."""
    return Simulation(game, players, schedule, num_rounds, seed)()
