import math

import numpy as np
import pytest

from czlearn import (
    SleepingExpertState,
    ada_log_weights,
    ada_predict,
    ada_update,
    ada_weight,
    expert_b_value,
    sleeping_regret_bound,
)


class TestAdaWeight:
    @pytest.mark.parametrize(
        ["regret", "magnitude", "expected"],
        [
            [-2.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 0.0, 0.5 * (math.exp(1 / 3) - 1)],
            [2.0, 0.0, 0.5 * (math.exp(3) - math.exp(1 / 3))],
        ],
    )
    def test_value(self, regret: float, magnitude: float, expected: float) -> None:
        assert ada_weight(regret, magnitude) == pytest.approx(expected, rel=1e-12)

    def test_known_values(self) -> None:
        assert ada_weight(0.0, 0.0) == pytest.approx(0.19780, abs=1e-5)
        assert ada_weight(2.0, 0.0) == pytest.approx(9.34496, abs=1e-5)

    def test_log_space(self) -> None:
        regret, magnitude = 60.0, 1.0
        upper = (regret + 1) ** 2 / (3 * (magnitude + 1))
        lower = (regret - 1) ** 2 / (3 * (magnitude + 1))
        expected_log = upper + math.log1p(-math.exp(lower - upper)) - math.log(2)
        log_w = ada_log_weights(np.array([regret]), np.array([magnitude]))[0]
        assert log_w == pytest.approx(expected_log, rel=1e-12)
        assert ada_weight(regret, magnitude) == pytest.approx(math.exp(expected_log))

    def test_overflow(self) -> None:
        assert ada_weight(1e4, 0.0) == math.inf

    def test_negative_magnitude(self) -> None:
        with pytest.raises(ValueError):
            ada_weight(0.0, -1.0)


class TestAdaPredict:
    @pytest.mark.parametrize("num_experts", [1, 2, 7])
    def test_fresh(self, num_experts: int) -> None:
        probs = ada_predict(SleepingExpertState.fresh(num_experts))
        assert np.allclose(probs, 1.0 / num_experts)

    def test_dominant(self) -> None:
        state = SleepingExpertState(np.array([2.0, -2.0]), np.array([0.0, 1.0]))
        assert np.array_equal(ada_predict(state), [1.0, 0.0])

    def test_zero_weights(self) -> None:
        state = SleepingExpertState(np.array([-3.0, -1.5, -1.0]), np.ones(3))
        assert np.allclose(ada_predict(state), 1 / 3)

    def test_huge_regrets(self) -> None:
        state = SleepingExpertState(np.array([1e4, 1e4 - 1, 0.0]), np.array([1e4] * 3))
        probs = ada_predict(state)
        assert np.all(np.isfinite(probs))
        assert probs.sum() == pytest.approx(1.0, abs=1e-12)
        assert probs[0] > probs[1] > probs[2]

    def test_simplex(self) -> None:
        rng = np.random.default_rng(0)
        for _ in range(50):
            magnitudes = rng.uniform(0, 20, size=5)
            regrets = rng.uniform(-1, 1, size=5) * magnitudes
            probs = ada_predict(SleepingExpertState(regrets, magnitudes))
            assert np.all(probs >= 0)
            assert probs.sum() == pytest.approx(1.0, abs=1e-12)


class TestAdaUpdate:
    def test_all_asleep(self) -> None:
        state = SleepingExpertState(np.array([0.3, -0.2]), np.array([0.5, 0.4]))
        updated = ada_update(state, np.zeros(2, bool), np.array([1.0, 0.0]), np.zeros(2))
        assert updated is state

    def test_hand(self) -> None:
        state = ada_update(
            SleepingExpertState.fresh(2),
            np.ones(2, bool),
            np.array([1.0, 0.0]),
            np.array([0.5, 0.5]),
        )
        assert np.allclose(state.regrets, [0.5, -0.5])
        assert np.allclose(state.magnitudes, [0.5, 0.5])

    def test_asleep_unchanged(self) -> None:
        state = ada_update(
            SleepingExpertState.fresh(3),
            np.array([True, False, True]),
            np.array([0.2, 1.0, 0.6]),
            np.array([0.5, 0.0, 0.5]),
        )
        assert np.allclose(state.regrets, [-0.2, 0.0, 0.2])
        assert np.allclose(state.magnitudes, [0.2, 0.0, 0.2])

    def test_mass_on_asleep(self) -> None:
        with pytest.raises(ValueError):
            ada_update(
                SleepingExpertState.fresh(2),
                np.array([True, False]),
                np.array([0.2, 1.0]),
                np.array([0.5, 0.5]),
            )

    def test_non_finite(self) -> None:
        with pytest.raises(ValueError):
            ada_update(
                SleepingExpertState.fresh(2),
                np.ones(2, bool),
                np.array([np.nan, 1.0]),
                np.array([0.5, 0.5]),
            )

    def test_immutable(self) -> None:
        state = SleepingExpertState.fresh(2)
        with pytest.raises(ValueError):
            state.regrets[0] = 1.0


def least_weighted_rewards(
    state: SleepingExpertState, awake: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    # all the reward goes to the awake expert the learner trusts the least
    probs = np.where(awake, ada_predict(state), np.inf)
    rewards = np.zeros(state.num_experts)
    rewards[int(np.argmin(probs))] = 1.0
    return rewards


def random_rewards(
    state: SleepingExpertState, awake: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    return rng.random(state.num_experts)


def play_sleeping_experts(
    num_experts: int, num_rounds: int, seed: int, reward_fn=random_rewards
) -> SleepingExpertState:
    rng = np.random.default_rng(seed)
    state = SleepingExpertState.fresh(num_experts)
    for _ in range(num_rounds):
        awake = rng.random(num_experts) < rng.uniform(0.3, 1.0)
        awake[rng.integers(num_experts)] = True
        rewards = reward_fn(state, awake, rng)
        probs = ada_predict(state) * awake
        if probs.sum() > 0:
            sampling_dist = probs / probs.sum()
        else:
            sampling_dist = awake / awake.sum()
        state = ada_update(state, awake, rewards, sampling_dist)
        assert np.all(np.abs(state.regrets) <= state.magnitudes + 1e-9)
    return state


class TestSleepingRegret:
    @pytest.mark.parametrize("reward_fn", [random_rewards, least_weighted_rewards])
    def test_bound(self, reward_fn) -> None:
        for seed in range(100):
            rng = np.random.default_rng(seed)
            num_experts = int(rng.integers(2, 9))
            num_rounds = int(rng.integers(100, 2001))
            state = play_sleeping_experts(num_experts, num_rounds, seed, reward_fn)
            bound = sleeping_regret_bound(state.magnitudes)
            assert np.all(state.regrets <= bound + 1e-9), seed

    def test_long_adversarial(self) -> None:
        state = play_sleeping_experts(8, 2000, 7, least_weighted_rewards)
        assert np.max(state.regrets) > 0
        assert np.all(state.regrets <= sleeping_regret_bound(state.magnitudes) + 1e-9)

    def test_b_value(self) -> None:
        magnitudes = np.array([0.0, math.e - 1])
        assert expert_b_value(magnitudes) == pytest.approx(1 + 0.75 * (1 + 2))
