import math

import numpy as np
import pytest

from czlearn import (
    AdaNormalHedgeRule,
    HedgeState,
    ReducedHedgeRule,
    hedge_predict,
    hedge_step_size,
    hedge_update,
    sleeping_reward_completion,
)


class TestHedge:
    def test_fresh(self) -> None:
        assert np.allclose(hedge_predict(HedgeState.fresh(4)), 0.25)

    def test_single_update(self) -> None:
        state = hedge_update(HedgeState.fresh(2), np.array([1.0, 0.0]))
        eta = 2 * math.sqrt(math.log(2))
        assert eta == pytest.approx(1.6651, abs=1e-4)
        probs = hedge_predict(state)
        assert probs[0] == pytest.approx(1 / (1 + math.exp(-eta)), rel=1e-12)
        assert state.rounds_seen == 1

    def test_step_size(self) -> None:
        assert hedge_step_size(4, 4) == pytest.approx(math.sqrt(math.log(4)))

    def test_equal_rewards(self) -> None:
        state = hedge_update(HedgeState.fresh(3), np.array([1.0, 0.0, 0.5]))
        before = hedge_predict(state)
        after = hedge_predict(hedge_update(state, np.full(3, 0.3)))
        assert np.allclose(before, after, atol=1e-12)

    def test_wrong_shape(self) -> None:
        with pytest.raises(ValueError):
            hedge_update(HedgeState.fresh(3), np.ones(2))


class TestRewardCompletion:
    def test_all_awake(self) -> None:
        completed = sleeping_reward_completion(
            np.array([1.4, -0.2, 0.5]), np.ones(3, bool), np.full(3, 1 / 3)
        )
        assert np.allclose(completed, [1.0, 0.0, 0.5])

    def test_hand(self) -> None:
        completed = sleeping_reward_completion(
            np.array([0.8, 0.9, 0.4]),
            np.array([True, False, True]),
            np.full(3, 1 / 3),
        )
        assert np.allclose(completed, [0.8, 0.6, 0.4])

    def test_none_awake(self) -> None:
        with pytest.raises(ValueError):
            sleeping_reward_completion(np.ones(2), np.zeros(2, bool), np.full(2, 0.5))

    def test_consistency(self) -> None:
        rng = np.random.default_rng(0)
        for _ in range(200):
            awake = rng.random(6) < 0.5
            awake[rng.integers(6)] = True
            probs = rng.dirichlet(np.ones(6))
            completed = sleeping_reward_completion(rng.normal(0.5, 1, 6), awake, probs)
            p_bar = np.where(awake, probs, 0.0) / np.where(awake, probs, 0.0).sum()
            assert np.all((completed >= 0) & (completed <= 1))
            assert probs @ completed == pytest.approx(p_bar @ completed, abs=1e-12)


class TestExpertRules:
    def test_ada_normal_hedge_rule(self) -> None:
        rule = AdaNormalHedgeRule(2)
        probs = rule.predict()
        rule.update(np.ones(2, bool), np.array([1.7, -0.4]), probs, probs)
        assert np.allclose(rule.state.regrets, [0.5, -0.5])
        assert rule.predict()[0] > 0.5

    def test_reduced_hedge_rule(self) -> None:
        rule = ReducedHedgeRule(3)
        probs = rule.predict()
        mask = np.array([True, False, True])
        sampling_dist = np.array([0.5, 0.0, 0.5])
        rule.update(mask, np.array([1.0, 0.9, 0.0]), probs, sampling_dist)
        assert rule.state.rounds_seen == 1
        eta = hedge_step_size(3, 1)
        assert np.allclose(rule.state.log_weights, eta * np.array([1.0, 0.5, 0.0]))
