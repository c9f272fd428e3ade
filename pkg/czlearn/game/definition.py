"""Ground-truth definitions of repeated contextual games with constraints."""

from abc import ABC, abstractmethod
from collections.abc import Callable, Hashable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict


@dataclass(frozen=True)
class FiniteContextSpace:
    """Contexts are the integers `{0, ..., num_contexts - 1}`."""

    num_contexts: int


@dataclass(frozen=True)
class ContinuousContextSpace:
    """Contexts are vectors of the unit box `[0, 1]^dim`."""

    dim: int


type ContextSpace = FiniteContextSpace | ContinuousContextSpace


def context_key(context: Any) -> Hashable:
    """Hashable key of a context: the id of a finite context, the tuple of coordinates
    of a context vector.
    """
    if np.ndim(context) == 0:
        return int(context)
    return tuple(float(x) for x in np.asarray(context).reshape(-1))


class GameDefinition(ABC):
    """Base class for the ground truth of an `N`-player game: reward functions
    `r_i(a, z)` in [0, 1] over joint actions and contexts, constraint functions
    `g_im(a_i, z)` over own actions and contexts (feasible iff `<= 0`) and the scale
    of the gaussian observation noise.

    Subclasses should implement the `reward` and `constraints` methods.
    """

    def __init__(
        self,
        num_actions: Sequence[int],
        num_constraints: Sequence[int],
        context_space: ContextSpace,
        reward_noise: Sequence[float],
        constraint_noise: Sequence[Sequence[float]],
    ) -> None:
        super().__init__()
        self._num_actions = tuple(int(k) for k in num_actions)
        self._num_constraints = tuple(int(m) for m in num_constraints)
        n = len(self._num_actions)
        if n < 1:
            raise ValueError("A game needs at least one player.")
        if any(k < 1 for k in self._num_actions):
            raise ValueError(f"Invalid number of actions: {self._num_actions}")
        if len(self._num_constraints) != n or any(m < 0 for m in self._num_constraints):
            raise ValueError(f"Invalid number of constraints: {self._num_constraints}")
        self._context_space = context_space
        self._reward_noise = tuple(float(s) for s in reward_noise)
        self._constraint_noise = tuple(
            tuple(float(s) for s in row) for row in constraint_noise
        )
        if len(self._reward_noise) != n or len(self._constraint_noise) != n:
            raise ValueError("Expected one noise specification per player.")
        for m, row in zip(self._num_constraints, self._constraint_noise):
            if len(row) != m:
                raise ValueError("Expected one noise scale per constraint.")
        noise = self._reward_noise + sum(self._constraint_noise, ())
        if any(s < 0 for s in noise):
            raise ValueError("Noise scales must be non-negative.")

    @property
    def num_players(self) -> int:
        """Number of players `N`."""
        return len(self._num_actions)

    @property
    def num_actions(self) -> tuple[int, ...]:
        """Number of actions of every player."""
        return self._num_actions

    @property
    def num_constraints(self) -> tuple[int, ...]:
        """Number of constraints of every player."""
        return self._num_constraints

    @property
    def context_space(self) -> ContextSpace:
        """Space of the contexts."""
        return self._context_space

    @property
    def reward_noise(self) -> tuple[float, ...]:
        """Standard deviation of the reward noise of every player."""
        return self._reward_noise

    @property
    def constraint_noise(self) -> tuple[tuple[float, ...], ...]:
        """Standard deviation of the constraint noise of every player and constraint."""
        return self._constraint_noise

    @abstractmethod
    def reward(self, player: int, joint_action: Sequence[int], context: Any) -> float:
        """True reward of a player.

        Args:
            player (int): Index of the player.
            joint_action (Sequence[int]): Actions of all the players.
            context (Any): Context of the round.

        Returns:
            float: The reward, in [0, 1].
        """
        pass

    @abstractmethod
    def constraints(self, player: int, action: int, context: Any) -> np.ndarray:
        """True constraint values of a player.

        Args:
            player (int): Index of the player.
            action (int): Action of the player.
            context (Any): Context of the round.

        Returns:
            np.ndarray: Value of every constraint of the player.
        """
        pass

    def reward_row(
        self, player: int, joint_action: Sequence[int], context: Any
    ) -> np.ndarray:
        """True reward of every action of a player, against fixed opponents' actions."""
        joint = list(joint_action)
        row = np.empty(self._num_actions[player])
        for a in range(len(row)):
            joint[player] = a
            row[a] = self.reward(player, joint, context)
        return row

    def constraint_table(self, player: int, context: Any) -> np.ndarray:
        """True constraint values of every action of a player, shape `(K_i, M_i)`."""
        return np.stack(
            [
                np.asarray(self.constraints(player, a, context), dtype=np.float64)
                for a in range(self._num_actions[player])
            ]
        ).reshape(self._num_actions[player], self._num_constraints[player])

    def feasible_actions(self, player: int, context: Any) -> np.ndarray:
        """Boolean mask of the actions satisfying every true constraint."""
        return np.all(self.constraint_table(player, context) <= 0, axis=1)


class GameDocument(BaseModel):
    """Serialized form of a `TabularGame`, with tables stored as nested lists."""

    model_config = ConfigDict(extra="forbid")

    num_actions: list[int]
    num_contexts: int
    num_constraints: list[int]
    rewards: list[Any]
    constraints: list[Any]
    reward_noise: list[float]
    constraint_noise: list[list[float]]
    seed: int | None = None
    scheme: str | None = None


class TabularGame(GameDefinition):
    """Game over a finite context space with tabulated rewards and constraints.

    The reward table of player `i` has shape `(K_1, ..., K_N, |Z|)`, its constraint
    table has shape `(K_i, |Z|, M_i)`.
    """

    def __init__(
        self,
        rewards: Sequence[np.ndarray],
        constraints: Sequence[np.ndarray],
        reward_noise: Sequence[float] | None = None,
        constraint_noise: Sequence[Sequence[float]] | None = None,
        seed: int | None = None,
        scheme: str | None = None,
    ) -> None:
        """
        Args:
            rewards (Sequence[np.ndarray]): Reward table of every player.
            constraints (Sequence[np.ndarray]): Constraint table of every player.
            reward_noise (Sequence[float] | None, optional): Reward noise scale of
                every player. Defaults to 1 for every player.
            constraint_noise (Sequence[Sequence[float]] | None, optional): Noise scale
                of every constraint. Defaults to 1 for every constraint.
            seed (int | None, optional): Seed the game was generated with, if any.
            scheme (str | None, optional): Name of the generation scheme, if any.
        """
        reward_tables = [np.asarray(r, dtype=np.float64) for r in rewards]
        constraint_tables = [np.asarray(g, dtype=np.float64) for g in constraints]
        if len(reward_tables) == 0 or len(reward_tables) != len(constraint_tables):
            raise ValueError("Expected one reward and one constraint table per player.")
        shape = reward_tables[0].shape
        n = len(reward_tables)
        if len(shape) != n + 1:
            raise ValueError(
                f"Reward tables of a {n}-player game must have {n + 1} axes, "
                f"got shape {shape}"
            )
        num_actions, num_contexts = shape[:-1], shape[-1]
        for table in reward_tables:
            if table.shape != shape:
                raise ValueError("All reward tables must have the same shape.")
            if np.any(table < 0) or np.any(table > 1) or not np.all(np.isfinite(table)):
                raise ValueError("Rewards must lie in [0, 1].")
        for i, table in enumerate(constraint_tables):
            if table.ndim != 3 or table.shape[:2] != (num_actions[i], num_contexts):
                raise ValueError(
                    f"Constraint table of player {i} must have shape "
                    f"({num_actions[i]}, {num_contexts}, M), got {table.shape}"
                )
            if not np.all(np.isfinite(table)):
                raise ValueError("Constraint values must be finite.")
        num_constraints = [table.shape[2] for table in constraint_tables]
        super().__init__(
            num_actions,
            num_constraints,
            FiniteContextSpace(num_contexts),
            [1.0] * n if reward_noise is None else reward_noise,
            (
                [[1.0] * m for m in num_constraints]
                if constraint_noise is None
                else constraint_noise
            ),
        )
        self._rewards = reward_tables
        self._constraints = constraint_tables
        self._seed = seed
        self._scheme = scheme

    @property
    def num_contexts(self) -> int:
        """Number of contexts `|Z|`."""
        return self._rewards[0].shape[-1]

    @property
    def rewards(self) -> list[np.ndarray]:
        """Reward table of every player."""
        return [r.copy() for r in self._rewards]

    @property
    def constraint_tables(self) -> list[np.ndarray]:
        """Constraint table of every player."""
        return [g.copy() for g in self._constraints]

    @property
    def seed(self) -> int | None:
        """Seed the game was generated with, if any."""
        return self._seed

    @property
    def scheme(self) -> str | None:
        """Name of the generation scheme, if any."""
        return self._scheme

    def _context(self, context: Any) -> int:
        z = int(context)
        if z != context or not 0 <= z < self.num_contexts:
            raise ValueError(f"Context {context!r} is not in the context space.")
        return z

    def reward(self, player: int, joint_action: Sequence[int], context: Any) -> float:
        return float(self._rewards[player][tuple(joint_action) + (self._context(context),)])

    def constraints(self, player: int, action: int, context: Any) -> np.ndarray:
        return self._constraints[player][action, self._context(context)].copy()

    def reward_row(
        self, player: int, joint_action: Sequence[int], context: Any
    ) -> np.ndarray:
        index: list[Any] = list(joint_action) + [self._context(context)]
        index[player] = slice(None)
        return self._rewards[player][tuple(index)].copy()

    def constraint_table(self, player: int, context: Any) -> np.ndarray:
        return self._constraints[player][:, self._context(context)].copy()

    def feasibility_certificate(self) -> np.ndarray:
        """Whether every (player, context) pair has at least one feasible action,
        boolean array of shape `(N, |Z|)`.
        """
        return np.array(
            [np.any(np.all(g <= 0, axis=2), axis=0) for g in self._constraints]
        )

    def is_feasible(self) -> bool:
        """Whether every player has a feasible action at every context."""
        return bool(np.all(self.feasibility_certificate()))

    def to_document(self) -> GameDocument:
        """Convert the game to its serializable document."""
        return GameDocument(
            num_actions=list(self.num_actions),
            num_contexts=self.num_contexts,
            num_constraints=list(self.num_constraints),
            rewards=[r.tolist() for r in self._rewards],
            constraints=[g.tolist() for g in self._constraints],
            reward_noise=list(self.reward_noise),
            constraint_noise=[list(row) for row in self.constraint_noise],
            seed=self._seed,
            scheme=self._scheme,
        )

    @classmethod
    def from_document(cls, document: GameDocument) -> "TabularGame":
        """Build a game from its serializable document.

        Raises:
            ValueError: If the tables are inconsistent with the declared dimensions.
        """
        game = cls(
            [np.asarray(r, dtype=np.float64) for r in document.rewards],
            [
                np.asarray(g, dtype=np.float64).reshape(k, document.num_contexts, m)
                for g, k, m in zip(
                    document.constraints,
                    document.num_actions,
                    document.num_constraints,
                )
            ],
            document.reward_noise,
            document.constraint_noise,
            seed=document.seed,
            scheme=document.scheme,
        )
        if (
            list(game.num_actions) != document.num_actions
            or game.num_contexts != document.num_contexts
            or list(game.num_constraints) != document.num_constraints
        ):
            raise ValueError("Game tables are inconsistent with the declared dimensions.")
        return game


type RewardFunction = Callable[[tuple[int, ...], np.ndarray], float]
type ConstraintFunction = Callable[[int, np.ndarray], Sequence[float]]


class FunctionGame(GameDefinition):
    """Game over the continuous context space `[0, 1]^dim`, with rewards and
    constraints given as callables.
    """

    def __init__(
        self,
        num_actions: Sequence[int],
        context_dim: int,
        reward_fns: Sequence[RewardFunction],
        constraint_fns: Sequence[ConstraintFunction],
        num_constraints: Sequence[int],
        reward_noise: Sequence[float] | None = None,
        constraint_noise: Sequence[Sequence[float]] | None = None,
    ) -> None:
        """
        Args:
            num_actions (Sequence[int]): Number of actions of every player.
            context_dim (int): Dimension of the context space.
            reward_fns (Sequence[RewardFunction]): Reward function of every player,
                called with the joint action and the context vector.
            constraint_fns (Sequence[ConstraintFunction]): Constraint function of every
                player, called with the own action and the context vector.
            num_constraints (Sequence[int]): Number of constraints of every player.
            reward_noise (Sequence[float] | None, optional): Reward noise scale of
                every player. Defaults to 1 for every player.
            constraint_noise (Sequence[Sequence[float]] | None, optional): Noise scale
                of every constraint. Defaults to 1 for every constraint.
        """
        n = len(num_actions)
        if len(reward_fns) != n or len(constraint_fns) != n:
            raise ValueError("Expected one reward and one constraint function per player.")
        if context_dim < 1:
            raise ValueError(f"Context dimension must be positive, got {context_dim}")
        super().__init__(
            num_actions,
            num_constraints,
            ContinuousContextSpace(context_dim),
            [1.0] * n if reward_noise is None else reward_noise,
            (
                [[1.0] * m for m in num_constraints]
                if constraint_noise is None
                else constraint_noise
            ),
        )
        self._reward_fns = list(reward_fns)
        self._constraint_fns = list(constraint_fns)

    def _context(self, context: Any) -> np.ndarray:
        z = np.asarray(context, dtype=np.float64).reshape(-1)
        assert isinstance(self.context_space, ContinuousContextSpace)
        if z.shape[0] != self.context_space.dim:
            raise ValueError(f"Expected a context of dimension {self.context_space.dim}.")
        return z

    def reward(self, player: int, joint_action: Sequence[int], context: Any) -> float:
        value = float(self._reward_fns[player](tuple(joint_action), self._context(context)))
        if not 0 <= value <= 1:
            raise ValueError(f"Reward of player {player} outside [0, 1]: {value}")
        return value

    def constraints(self, player: int, action: int, context: Any) -> np.ndarray:
        values = np.asarray(
            self._constraint_fns[player](action, self._context(context)),
            dtype=np.float64,
        ).reshape(-1)
        if values.shape[0] != self.num_constraints[player]:
            raise ValueError(
                f"Player {player} expects {self.num_constraints[player]} constraint "
                f"values, got {values.shape[0]}"
            )
        return values
