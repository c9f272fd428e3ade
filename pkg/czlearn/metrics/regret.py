"""Constrained contextual regret and cumulative constraint violations, computed from
the true rewards and constraints of the game.
"""

from collections.abc import Hashable
from enum import Enum

import numpy as np

from czlearn.game import GameDefinition, Trajectory


class RegretConvention(str, Enum):
    """Comparator used for the intermediate values of a regret trajectory."""

    FIXED = "fixed"
    """Partial sums against the best feasible policy of the whole trajectory."""
    ANYTIME = "anytime"
    """Partial sums against the best feasible policy of the rounds played so far."""


def _reward_rows(
    trajectory: Trajectory, game: GameDefinition, player: int
) -> tuple[np.ndarray, np.ndarray]:
    # (T, K) rewards of every own action against the opponents, (T,) realized rewards
    k = game.num_actions[player]
    rows = np.empty((len(trajectory), k))
    played = np.empty(len(trajectory))
    for t, record in enumerate(trajectory.records):
        rows[t] = game.reward_row(player, record.joint_action, record.context)
        played[t] = rows[t, record.joint_action[player]]
    return rows, played


def _feasible_masks(
    trajectory: Trajectory, game: GameDefinition, player: int
) -> dict[Hashable, np.ndarray]:
    masks: dict[Hashable, np.ndarray] = {}
    for key, record in zip(trajectory.context_keys, trajectory.records):
        if key in masks:
            continue
        mask = game.feasible_actions(player, record.context)
        if not np.any(mask):
            raise ValueError(
                f"Player {player} has no feasible action at context {key!r}."
            )
        masks[key] = mask
    return masks


def _best_action(totals: np.ndarray, mask: np.ndarray) -> int:
    # first maximizer among the feasible actions
    return int(np.argmax(np.where(mask, totals, -np.inf)))


def best_feasible_policy(
    trajectory: Trajectory, game: GameDefinition, player: int
) -> dict[Hashable, int]:
    """Best feasible policy in hindsight of a player.

    The policy decomposes over the contexts: for every realized context it plays the
    action maximizing the total true reward over the rounds of that context, against
    the actions the opponents actually played, among the actions satisfying every
    true constraint at that context. Ties go to the smallest action index.

    Args:
        trajectory (Trajectory): The simulated trajectory.
        game (GameDefinition): Ground truth of the game.
        player (int): Index of the player.

    Returns:
        dict[Hashable, int]: Best action of every realized context key.

    Raises:
        ValueError: If a realized context has no feasible action.
    """
    rows, _ = _reward_rows(trajectory, game, player)
    masks = _feasible_masks(trajectory, game, player)
    totals = {key: np.zeros(game.num_actions[player]) for key in masks}
    for key, row in zip(trajectory.context_keys, rows):
        totals[key] += row
    return {key: _best_action(totals[key], masks[key]) for key in masks}


def constrained_regret(
    trajectory: Trajectory,
    game: GameDefinition,
    player: int,
    convention: RegretConvention | str = RegretConvention.FIXED,
) -> np.ndarray:
    """Constrained contextual regret trajectory of a player.

    Entry `t - 1` is the regret after `t` rounds: the total true reward the comparator
    policy would have collected against the realized opponents' actions minus the total
    true reward the player collected. With the `fixed` convention the comparator is
    the best feasible policy of the whole trajectory, with the `anytime` convention it
    is the best feasible policy of the first `t` rounds.

    Args:
        trajectory (Trajectory): The simulated trajectory.
        game (GameDefinition): Ground truth of the game.
        player (int): Index of the player.
        convention (RegretConvention | str, optional): Comparator convention.
            Defaults to `RegretConvention.FIXED`.

    Returns:
        np.ndarray: Regret after every round, of length `T`.

    Raises:
        ValueError: If a realized context has no feasible action.
    """
    convention = RegretConvention(convention)
    rows, played = _reward_rows(trajectory, game, player)
    keys = trajectory.context_keys
    if convention == RegretConvention.FIXED:
        policy = best_feasible_policy(trajectory, game, player)
        comparator = np.array([row[policy[key]] for key, row in zip(keys, rows)])
        return np.cumsum(comparator) - np.cumsum(played)

    masks = _feasible_masks(trajectory, game, player)
    totals: dict[Hashable, np.ndarray] = {}
    best: dict[Hashable, float] = {}
    regret = np.empty(len(trajectory))
    for t, (key, row) in enumerate(zip(keys, rows)):
        totals[key] = totals.get(key, 0.0) + row
        best[key] = float(totals[key][_best_action(totals[key], masks[key])])
        regret[t] = sum(best.values())
    return regret - np.cumsum(played)


def cumulative_violations(
    trajectory: Trajectory, game: GameDefinition, player: int
) -> np.ndarray:
    """Cumulative violation of every constraint of a player, the running sum of the
    positive part of the true constraint values of the played actions.

    Args:
        trajectory (Trajectory): The simulated trajectory.
        game (GameDefinition): Ground truth of the game.
        player (int): Index of the player.

    Returns:
        np.ndarray: Array of shape `(T, M_i)`, nondecreasing along the first axis.
    """
    m = game.num_constraints[player]
    values = np.array(
        [record.true_constraints[player] for record in trajectory.records],
        dtype=np.float64,
    ).reshape(len(trajectory), m)
    return np.cumsum(np.maximum(values, 0.0), axis=0)
