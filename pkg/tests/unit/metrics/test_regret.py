import itertools

import numpy as np
import pytest

from czlearn import (
    RegretConvention,
    TabularGame,
    best_feasible_policy,
    constrained_regret,
    cumulative_violations,
)


@pytest.fixture
def two_action_game() -> TabularGame:
    # action 0 earns 0.5, action 1 earns 0.1, both feasible
    return TabularGame([np.array([[0.5], [0.1]])], [np.full((2, 1, 1), -1.0)])


class TestConstrainedRegret:
    def test_hand(self, two_action_game: TabularGame, trajectory_factory) -> None:
        trajectory = trajectory_factory(two_action_game, [0, 0], [(1,), (1,)])
        regret = constrained_regret(trajectory, two_action_game, 0)
        assert np.allclose(regret, [0.4, 0.8])

    def test_optimal_play(self, two_action_game: TabularGame, trajectory_factory) -> None:
        trajectory = trajectory_factory(two_action_game, [0] * 5, [(0,)] * 5)
        assert np.allclose(constrained_regret(trajectory, two_action_game, 0), 0.0)

    def test_infeasible_optimum(self, trajectory_factory) -> None:
        # the best action violates its constraint, so it is not a valid comparator
        game = TabularGame(
            [np.array([[0.9], [0.5], [0.1]])],
            [np.array([1.0, -1.0, -1.0]).reshape(3, 1, 1)],
        )
        trajectory = trajectory_factory(game, [0, 0], [(0,), (2,)])
        assert best_feasible_policy(trajectory, game, 0) == {0: 1}
        assert np.allclose(constrained_regret(trajectory, game, 0), [-0.4, 0.0])

    def test_no_feasible_action(self, infeasible_game: TabularGame, trajectory_factory) -> None:
        trajectory = trajectory_factory(infeasible_game, [0], [(0,)])
        with pytest.raises(ValueError):
            constrained_regret(trajectory, infeasible_game, 0)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_exhaustive_oracle(self, seed: int, trajectory_factory) -> None:
        rng = np.random.default_rng(seed)
        k, z = 3, 2
        constraints = rng.uniform(-1, 1, size=(k, z, 1))
        constraints[0] = -0.5
        game = TabularGame(
            [rng.uniform(size=(k, 2, z)), rng.uniform(size=(k, 2, z))],
            [constraints, np.full((2, z, 0), 0.0)],
        )
        contexts = [int(c) for c in rng.integers(0, z, size=12)]
        joints = [(int(rng.integers(k)), int(rng.integers(2))) for _ in contexts]
        trajectory = trajectory_factory(game, contexts, joints)

        played = sum(game.reward(0, a, c) for a, c in zip(joints, contexts))
        best = -np.inf
        for policy in itertools.product(range(k), repeat=z):
            if not all(game.feasible_actions(0, c)[policy[c]] for c in set(contexts)):
                continue
            total = sum(
                game.reward(0, (policy[c], a[1]), c) for a, c in zip(joints, contexts)
            )
            best = max(best, total)
        regret = constrained_regret(trajectory, game, 0)
        assert regret[-1] == pytest.approx(best - played, abs=1e-12)

    def test_anytime(self, two_action_game: TabularGame, trajectory_factory) -> None:
        game = two_action_game
        trajectory = trajectory_factory(game, [0, 0, 0], [(1,), (0,), (1,)])
        fixed = constrained_regret(trajectory, game, 0, RegretConvention.FIXED)
        anytime = constrained_regret(trajectory, game, 0, "anytime")
        assert anytime[-1] == pytest.approx(fixed[-1])
        assert np.allclose(anytime, [0.4, 0.4, 0.8])


class TestCumulativeViolations:
    def test_feasible_play(self, coordination_game: TabularGame, trajectory_factory) -> None:
        trajectory = trajectory_factory(coordination_game, [0] * 4, [(0, 1)] * 4)
        assert np.array_equal(
            cumulative_violations(trajectory, coordination_game, 1), np.zeros((4, 1))
        )

    def test_single_violation(self, trajectory_factory) -> None:
        game = TabularGame(
            [np.array([[0.5], [0.5]])], [np.array([0.3, -0.2]).reshape(2, 1, 1)]
        )
        trajectory = trajectory_factory(game, [0, 0, 0], [(0,), (1,), (1,)])
        violations = cumulative_violations(trajectory, game, 0)
        assert violations.shape == (3, 1)
        assert np.allclose(violations[:, 0], [0.3, 0.3, 0.3])

    def test_rescan(self, trajectory_factory) -> None:
        rng = np.random.default_rng(0)
        game = TabularGame(
            [rng.uniform(size=(4, 3))], [rng.uniform(-1, 1, size=(4, 3, 2))]
        )
        contexts = [int(c) for c in rng.integers(0, 3, size=30)]
        joints = [(int(a),) for a in rng.integers(0, 4, size=30)]
        violations = cumulative_violations(
            trajectory_factory(game, contexts, joints), game, 0
        )
        expected = np.zeros(2)
        for t, (c, a) in enumerate(zip(contexts, joints)):
            expected += np.maximum(game.constraints(0, a[0], c), 0)
            assert np.array_equal(violations[t], expected)
        assert np.all(np.diff(violations, axis=0) >= 0)
