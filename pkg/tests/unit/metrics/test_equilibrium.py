import numpy as np
import pytest

from czlearn import (
    FiniteContexts,
    GeneratorParams,
    PlayerConfig,
    TabularGame,
    UniformContexts,
    cce_epsilon,
    constrained_regret,
    cumulative_violations,
    empirical_policy,
    generate_random_game,
    make_player,
    run,
)


class TestEmpiricalPolicy:
    def test_frequencies(self, coordination_game: TabularGame, trajectory_factory) -> None:
        trajectory = trajectory_factory(
            coordination_game, [0] * 4, [(0, 0), (0, 0), (1, 0), (0, 0)]
        )
        policy = empirical_policy(trajectory)
        assert policy.realized == [0]
        assert policy.rounds(0) == 4
        assert policy.distribution(0) == {(0, 0): 0.75, (1, 0): 0.25}

    def test_unrealized_context(self, coordination_game: TabularGame, trajectory_factory) -> None:
        policy = empirical_policy(trajectory_factory(coordination_game, [0], [(1, 1)]))
        assert policy.rounds(7) == 0
        distribution = policy.distribution(7)
        assert len(distribution) == 4
        assert all(p == pytest.approx(0.25) for p in distribution.values())

    def test_empty(self, coordination_game: TabularGame, trajectory_factory) -> None:
        with pytest.raises(ValueError):
            empirical_policy(trajectory_factory(coordination_game, [], []))


class TestCceEpsilon:
    def test_miscoordination(self, coordination_game: TabularGame, trajectory_factory) -> None:
        trajectory = trajectory_factory(coordination_game, [0, 0], [(0, 1), (1, 0)])
        certificate = cce_epsilon(trajectory, coordination_game)
        assert certificate.epsilon == pytest.approx(0.5)
        assert certificate.reward_gaps == pytest.approx((0.5, 0.5))
        assert certificate.violation_gaps == ((0.0,), (0.0,))

    def test_coordination(self, coordination_game: TabularGame, trajectory_factory) -> None:
        trajectory = trajectory_factory(coordination_game, [0] * 3, [(1, 1)] * 3)
        assert cce_epsilon(trajectory, coordination_game).epsilon == 0.0

    def test_violation_gap(self, trajectory_factory) -> None:
        table = np.array([[1.0, 0.0], [0.0, 1.0]])[..., None]
        game = TabularGame(
            [table, table.copy()],
            [np.array([-1.0, 0.4]).reshape(2, 1, 1), np.full((2, 1, 1), -1.0)],
        )
        trajectory = trajectory_factory(game, [0, 0], [(0, 1), (1, 0)])
        certificate = cce_epsilon(trajectory, game)
        assert certificate.violation_gaps[0] == pytest.approx((0.2,))
        assert certificate.reward_gaps[0] == pytest.approx(0.5)
        assert certificate.epsilon == pytest.approx(0.5)

    @pytest.mark.parametrize("seed", [0, 3])
    def test_regret_identity(self, seed: int) -> None:
        # the gaps are the final regrets and violations averaged over the rounds
        game = generate_random_game(
            seed,
            GeneratorParams(
                num_players=2, num_actions=3, num_contexts=2, num_gp_samples=3,
                points_per_sample=5,
            ),
        )
        seeds = np.random.SeedSequence(seed).spawn(2)
        players = [
            make_player(
                PlayerConfig(
                    num_players=2,
                    num_actions=3,
                    context_mode=FiniteContexts(2),
                    num_constraints=1,
                ),
                i,
                s,
            )
            for i, s in enumerate(seeds)
        ]
        trajectory = run(game, players, UniformContexts(2), 30, seed=seed)
        num_rounds = len(trajectory)
        certificate = cce_epsilon(trajectory, game)
        worst = 0.0
        for i in range(2):
            regret = constrained_regret(trajectory, game, i)[-1] / num_rounds
            violations = cumulative_violations(trajectory, game, i)[-1] / num_rounds
            assert certificate.reward_gaps[i] == pytest.approx(regret, abs=1e-9)
            assert certificate.violation_gaps[i] == pytest.approx(
                tuple(violations), abs=1e-9
            )
            worst = max(worst, regret, *violations)
        assert certificate.epsilon <= worst + 1e-9
