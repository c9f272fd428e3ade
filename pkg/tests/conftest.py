from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from czlearn import GameDefinition, RoundRecord, TabularGame, Trajectory

type TrajectoryFactory = Callable[
    [GameDefinition, Sequence[Any], Sequence[tuple[int, ...]]], Trajectory
]


@pytest.fixture
def sample_data() -> Path:
    return Path(__file__).parents[0] / "sample_data"


def make_trajectory(
    game: GameDefinition,
    contexts: Sequence[Any],
    joint_actions: Sequence[tuple[int, ...]],
) -> Trajectory:
    """Noiseless trajectory of a prescribed sequence of contexts and joint actions."""
    trajectory = Trajectory(num_actions=game.num_actions)
    for t, (z, joint) in enumerate(zip(contexts, joint_actions), start=1):
        rewards = tuple(game.reward(i, joint, z) for i in range(game.num_players))
        constraints = tuple(
            tuple(float(v) for v in game.constraints(i, joint[i], z))
            for i in range(game.num_players)
        )
        zeros = tuple(tuple(0.0 for _ in g) for g in constraints)
        trajectory.records.append(
            RoundRecord(
                round=t,
                context=z,
                joint_action=tuple(joint),
                true_rewards=rewards,
                true_constraints=constraints,
                reward_noise=tuple(0.0 for _ in rewards),
                constraint_noise=zeros,
                noisy_rewards=rewards,
                noisy_constraints=constraints,
            )
        )
    return trajectory


@pytest.fixture
def trajectory_factory() -> TrajectoryFactory:
    return make_trajectory


@pytest.fixture
def coordination_game() -> TabularGame:
    # 2 players, 2 actions, 1 context, rewards 1 iff the actions match
    table = np.array([[1.0, 0.0], [0.0, 1.0]])[..., None]
    constraints = np.full((2, 1, 1), -1.0)
    return TabularGame(
        [table, table.copy()],
        [constraints, constraints.copy()],
        reward_noise=[0.0, 0.0],
        constraint_noise=[[0.0], [0.0]],
    )


@pytest.fixture
def infeasible_game() -> TabularGame:
    # every action violates its constraint by a margin of 1
    return TabularGame(
        [np.full((2, 1), 0.5)],
        [np.ones((2, 1, 1))],
        reward_noise=[0.1],
        constraint_noise=[[0.1]],
    )
