"""Empirical joint policy of a trajectory and its approximate constrained contextual
coarse correlated equilibrium certificate.
"""

import itertools
from collections import Counter
from collections.abc import Hashable
from dataclasses import dataclass
from typing import Any

import numpy as np

from czlearn.game import GameDefinition, Trajectory

type JointAction = tuple[int, ...]


class EmpiricalPolicy:
    """Context-dependent distribution over joint actions: the frequency of every joint
    action among the rounds of a realized context, uniform over all the joint actions
    for the contexts that were never realized.
    """

    def __init__(
        self,
        num_actions: tuple[int, ...],
        counts: dict[Hashable, Counter[JointAction]],
        contexts: dict[Hashable, Any],
    ) -> None:
        """
        Args:
            num_actions (tuple[int, ...]): Number of actions of every player.
            counts (dict[Hashable, Counter[JointAction]]): Joint action counts of
                every realized context key.
            contexts (dict[Hashable, Any]): A context value for every realized key.
        """
        self._num_actions = num_actions
        self._counts = counts
        self._contexts = contexts

    @property
    def realized(self) -> list[Hashable]:
        """Keys of the realized contexts, in order of first occurrence."""
        return list(self._counts)

    def context(self, key: Hashable) -> Any:
        """A context value of a realized key."""
        return self._contexts[key]

    def rounds(self, key: Hashable) -> int:
        """Number of rounds played at a context key, 0 if never realized."""
        counts = self._counts.get(key)
        return 0 if counts is None else sum(counts.values())

    def distribution(self, key: Hashable) -> dict[JointAction, float]:
        """Distribution over the joint actions at a context key.

        Args:
            key (Hashable): Context key.

        Returns:
            dict[JointAction, float]: Probability of every joint action in the support.
        """
        counts = self._counts.get(key)
        if counts is None:
            joint = list(itertools.product(*(range(k) for k in self._num_actions)))
            return {a: 1.0 / len(joint) for a in joint}
        total = sum(counts.values())
        return {a: c / total for a, c in counts.items()}


def empirical_policy(trajectory: Trajectory) -> EmpiricalPolicy:
    """Empirical joint policy of a trajectory.

    Args:
        trajectory (Trajectory): A trajectory with at least one round.

    Returns:
        EmpiricalPolicy: The empirical joint policy.
    """
    if len(trajectory) == 0:
        raise ValueError("The empirical policy of an empty trajectory is undefined.")
    counts: dict[Hashable, Counter[JointAction]] = {}
    contexts: dict[Hashable, Any] = {}
    for key, record in zip(trajectory.context_keys, trajectory.records):
        counts.setdefault(key, Counter())[record.joint_action] += 1
        contexts.setdefault(key, record.context)
    return EmpiricalPolicy(trajectory.num_actions, counts, contexts)


@dataclass(frozen=True)
class CceCertificate:
    """Approximation level of the empirical joint policy of a trajectory."""

    epsilon: float
    """Largest of all the gaps, clamped at 0."""
    reward_gaps: tuple[float, ...]
    """Largest average reward gain of every player over a feasible deviation policy."""
    violation_gaps: tuple[tuple[float, ...], ...]
    """Average expected violation of every constraint of every player."""


def cce_epsilon(trajectory: Trajectory, game: GameDefinition) -> CceCertificate:
    """Smallest `epsilon` for which the empirical joint policy of a trajectory is an
    `epsilon`-constrained contextual coarse correlated equilibrium of the realized
    contexts.

    For every player the best feasible deviation is found context by context, with
    feasibility judged on the true constraints. The reward gap is the average over the
    rounds of the expected gain of the deviation against the empirical policy of the
    round's context, the violation gaps are the averages of the expected positive
    parts of the constraints under the same distributions.

    Args:
        trajectory (Trajectory): A trajectory with at least one round.
        game (GameDefinition): Ground truth of the game.

    Returns:
        CceCertificate: The certificate.
    """
    policy = empirical_policy(trajectory)
    num_rounds = len(trajectory)
    reward_gaps, violation_gaps = [], []
    for i in range(game.num_players):
        reward_gap = 0.0
        violation = np.zeros(game.num_constraints[i])
        for key in policy.realized:
            context = policy.context(key)
            weight = policy.rounds(key) / num_rounds
            deviation = np.zeros(game.num_actions[i])
            expected = 0.0
            table = game.constraint_table(i, context)
            for joint, prob in policy.distribution(key).items():
                row = game.reward_row(i, joint, context)
                deviation += prob * row
                expected += prob * row[joint[i]]
                violation += weight * prob * np.maximum(table[joint[i]], 0.0)
            mask = np.all(table <= 0, axis=1)
            if not np.any(mask):
                raise ValueError(f"Player {i} has no feasible action at context {key!r}.")
            reward_gap += weight * (float(np.max(deviation[mask])) - expected)
        reward_gaps.append(reward_gap)
        violation_gaps.append(tuple(float(v) for v in violation))

    gaps = reward_gaps + [v for row in violation_gaps for v in row]
    return CceCertificate(
        epsilon=max(0.0, *gaps),
        reward_gaps=tuple(reward_gaps),
        violation_gaps=tuple(violation_gaps),
    )
