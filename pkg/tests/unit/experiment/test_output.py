import json
import math
from pathlib import Path

import numpy as np
import pytest

from czlearn import __version__
from czlearn.experiment import (
    ExperimentRunner,
    aggregate,
    any_failed,
    check_summaries,
    config_hash,
    format_number,
    parse_config,
    reaggregate,
    write_outputs,
)
from czlearn.experiment.output import METADATA_FILE, SUMMARY_FILE, seed_file


def small_config(**changes):
    document = {
        "game": {
            "generate": {"N": 2, "K": 3, "Z": 2, "num_gp_samples": 3, "points_per_sample": 5}
        },
        "T": 10,
        "seeds": [0, 1],
    }
    document.update(changes)
    return parse_config(json.dumps(document))


class TestFormatNumber:
    @pytest.mark.parametrize(
        ["value", "expected"],
        [
            [3, "3"],
            [np.int64(12), "12"],
            [0.1, "0.1"],
            [1 / 3, "0.333333333333"],
            [123456789.123456789, "123456789.123"],
            [float("nan"), "nan"],
            [-2.5e-20, "-2.5e-20"],
        ],
    )
    def test_format(self, value: float, expected: str) -> None:
        assert format_number(value) == expected


class TestConfigHash:
    def test_stable(self) -> None:
        assert config_hash(small_config()) == config_hash(small_config())
        assert len(config_hash(small_config())) == 64

    def test_defaults_filled(self) -> None:
        explicit = small_config(regret_convention="fixed", contexts={"mode": "uniform"})
        assert config_hash(explicit) == config_hash(small_config())

    def test_execution_settings_ignored(self) -> None:
        moved = small_config(output_dir="elsewhere", parallel=4)
        assert config_hash(moved) == config_hash(small_config())

    def test_sensitive(self) -> None:
        assert config_hash(small_config(T=11)) != config_hash(small_config())


class TestAggregate:
    def test_mean_std(self) -> None:
        stats = aggregate([{"regret_1": [1.0, 2.0]}, {"regret_1": [3.0, 6.0]}])
        assert stats["per_round"]["regret_1"]["mean"] == [2.0, 4.0]
        assert stats["per_round"]["regret_1"]["std"] == [1.0, 2.0]
        assert stats["final"]["regret_1"] == {"mean": 4.0, "std": 2.0}

    def test_halted_runs(self) -> None:
        stats = aggregate([{"regret_1": [1.0, 2.0, 3.0]}, {"regret_1": [5.0]}])
        assert stats["per_round"]["regret_1"]["mean"] == [3.0, 2.0, 3.0]
        assert stats["final"]["regret_1"]["mean"] == pytest.approx(4.0)

    def test_nan(self) -> None:
        nan = math.nan
        stats = aggregate([{"regret_1": [nan, nan]}, {"regret_1": [1.0, nan]}])
        assert stats["per_round"]["regret_1"]["mean"] == [1.0, None]
        assert stats["final"]["regret_1"]["mean"] == 1.0

    def test_all_nan(self) -> None:
        stats = aggregate([{"regret_1": [math.nan]}])
        assert stats["per_round"]["regret_1"]["mean"] == [None]
        assert stats["final"]["regret_1"] == {"mean": None, "std": None}

    def test_empty(self) -> None:
        assert aggregate([]) == {"per_round": {}, "final": {}}


class TestWriteOutputs:
    def run_experiment(self, out_dir: Path, **changes) -> dict:
        config = small_config(**changes)
        results = ExperimentRunner(config)()
        write_outputs(out_dir, config, results)
        return results

    def test_layout(self, tmp_path: Path) -> None:
        results = self.run_experiment(tmp_path)
        assert not any_failed(results)
        variant_dir = tmp_path / "cz_ada_normal_gp"
        for seed in (0, 1):
            lines = (variant_dir / seed_file(seed)).read_text().splitlines()
            assert lines[0].split(",") == [
                "t", "z", "a_1", "a_2", "regret_1", "regret_2",
                "violation_1_1", "violation_2_1",
            ]
            assert len(lines) == 11

        summary = json.loads((variant_dir / SUMMARY_FILE).read_text())
        assert summary["seeds"] == [0, 1]
        assert summary["runs"]["0"]["status"] == "completed"
        assert "player_1" in summary["runs"]["0"]["bounds"]
        assert len(summary["per_round"]["regret_1"]["mean"]) == 10

        metadata = json.loads((tmp_path / METADATA_FILE).read_text())
        assert metadata["version"] == __version__
        assert metadata["config_sha256"] == config_hash(small_config())
        assert metadata["variants"] == ["cz_ada_normal_gp"]
        assert "output_dir" not in metadata["config"]

    def test_summaries_consistent(self, tmp_path: Path) -> None:
        self.run_experiment(tmp_path, sweep=["cz_ada_normal_gp", "gpmw"])
        assert check_summaries(tmp_path) == []
        assert set(reaggregate(tmp_path)) == {"cz_ada_normal_gp", "gpmw"}

    def test_tampered_summary(self, tmp_path: Path) -> None:
        self.run_experiment(tmp_path)
        path = tmp_path / "cz_ada_normal_gp" / SUMMARY_FILE
        summary = json.loads(path.read_text())
        summary["final"]["regret_1"]["mean"] = 1e6
        path.write_text(json.dumps(summary))
        assert check_summaries(tmp_path) == ["cz_ada_normal_gp"]

    def test_deterministic(self, tmp_path: Path) -> None:
        self.run_experiment(tmp_path / "a")
        self.run_experiment(tmp_path / "b", output_dir="elsewhere")
        names = [
            METADATA_FILE,
            f"cz_ada_normal_gp/{SUMMARY_FILE}",
            f"cz_ada_normal_gp/{seed_file(0)}",
            f"cz_ada_normal_gp/{seed_file(1)}",
        ]
        for name in names:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_failed_seed(self, tmp_path: Path) -> None:
        results = self.run_experiment(
            tmp_path, contexts={"mode": "fixed", "sequence": [9]}
        )
        assert any_failed(results)
        summary = json.loads((tmp_path / "cz_ada_normal_gp" / SUMMARY_FILE).read_text())
        assert summary["runs"]["0"]["status"] == "failed"
        assert "error" in summary["runs"]["0"]
        assert not (tmp_path / "cz_ada_normal_gp" / seed_file(0)).exists()
