import json
from pathlib import Path

import numpy as np
import pytest

from czlearn import Algorithm
from czlearn.experiment import (
    ExperimentRunner,
    SeedRuns,
    SeedStatus,
    load_config,
    parse_config,
    run_seed,
)


def small_config(**changes):
    document = {
        "game": {
            "generate": {"N": 2, "K": 3, "Z": 2, "num_gp_samples": 3, "points_per_sample": 5}
        },
        "T": 12,
        "seeds": [0, 1, 2],
    }
    document.update(changes)
    return parse_config(json.dumps(document))


class TestRunSeed:
    def test_completed(self) -> None:
        result = run_seed(small_config(), None, 0)
        assert result.status == SeedStatus.COMPLETED
        assert result.error is None
        assert len(result.contexts) == 12
        assert len(result.joint_actions) == 12
        assert result.num_constraints == (1, 1)
        assert result.report is not None
        assert list(result.report.bounds) == [0]

    def test_deterministic(self) -> None:
        a = run_seed(small_config(), None, 3)
        b = run_seed(small_config(), None, 3)
        assert a.contexts == b.contexts
        assert a.joint_actions == b.joint_actions
        assert a.report is not None and b.report is not None
        assert np.array_equal(a.report.regret[0], b.report.regret[0])

    def test_variant(self) -> None:
        result = run_seed(small_config(sweep=["random"]), Algorithm.RANDOM, 0)
        assert result.report is not None
        assert result.report.bounds == {}

    def test_failed(self) -> None:
        config = small_config(contexts={"mode": "fixed", "sequence": [9]})
        result = run_seed(config, None, 0)
        assert result.status == SeedStatus.FAILED
        assert result.report is None
        assert result.error is not None and result.error.startswith("ValueError")

    def test_infeasibility(self, sample_data: Path) -> None:
        result = run_seed(load_config(sample_data / "infeasible.json"), None, 0)
        assert result.status == SeedStatus.INFEASIBILITY_DECLARED
        assert result.report is not None
        assert result.report.infeasible_player == 0
        assert len(result.contexts) == result.report.num_rounds


class TestSeedRuns:
    def test_sequence(self) -> None:
        runs = SeedRuns(small_config(), None, [0, 1, 2])
        assert len(runs) == 3
        assert runs[1].seed == 1
        sliced = runs[1:]
        assert len(sliced) == 2
        assert sliced[0].seed == 1


class TestExperimentRunner:
    def test_serial(self) -> None:
        runner = ExperimentRunner(small_config(sweep=["cz_ada_normal_gp", "random"]))
        calls: list[str] = []
        runner.register_on_enter(lambda name, total: calls.append(name))
        results = runner()
        assert list(results) == ["cz_ada_normal_gp", "random"]
        assert calls == ["cz_ada_normal_gp", "random"]
        assert [r.seed for r in results["random"]] == [0, 1, 2]

    @pytest.mark.parametrize("parallel", [2])
    def test_parallel_matches_serial(self, parallel: int) -> None:
        config = small_config()
        serial = ExperimentRunner(config, parallel=0)()
        parallel_results = ExperimentRunner(config, parallel=parallel)()
        for a, b in zip(serial["cz_ada_normal_gp"], parallel_results["cz_ada_normal_gp"]):
            assert a.seed == b.seed
            assert a.contexts == b.contexts
            assert a.joint_actions == b.joint_actions


class TestShippedConfig:
    def test_learner_departs_from_random_play(self) -> None:
        path = Path(__file__).parents[3] / "configs" / "random_game.yaml"
        config = load_config(path).model_copy(update={"num_rounds": 60})
        random = run_seed(config, Algorithm.RANDOM, 0)
        learner = run_seed(config, Algorithm.CZ_ADA_NORMAL_GP, 0)
        assert random.status == SeedStatus.COMPLETED
        assert learner.status != SeedStatus.FAILED, learner.error
        own_random = [a[0] for a in random.joint_actions]
        own_learner = [a[0] for a in learner.joint_actions]
        assert own_learner != own_random[: len(own_learner)]
