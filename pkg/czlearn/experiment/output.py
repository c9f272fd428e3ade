"""Deterministic output files of an experiment: per-seed trajectories as CSV, per
variant summaries and a metadata stamp as JSON.
"""

import csv
import hashlib
import json
import math
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from czlearn import __version__
from czlearn.experiment.config import ExperimentConfig
from czlearn.experiment.runner import SeedResult, SeedStatus
from czlearn.game import GENERATOR_SCHEME
from czlearn.parsers import read_document, write_document

SIGNIFICANT_DIGITS = 12

SUMMARY_FILE = "summary.json"
METADATA_FILE = "metadata.json"


def format_number(value: float | int) -> str:
    """Format a number for the output files, floats with 12 significant digits."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def _json_number(value: float | None) -> float | None:
    if value is None or math.isnan(value):
        return None
    return float(format_number(value))


def canonical_config(config: ExperimentConfig) -> dict[str, Any]:
    """JSON form of a validated configuration without the execution settings (output
    directory and parallelism), which do not affect the results.
    """
    return config.model_dump(
        mode="json", by_alias=True, exclude={"output_dir", "parallel"}
    )


def config_hash(config: ExperimentConfig) -> str:
    """SHA-256 of the canonical JSON form of a validated configuration."""
    canonical = json.dumps(
        canonical_config(config),
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode()).hexdigest()


def seed_file(seed: int) -> str:
    return f"seed_{seed}.csv"


def trajectory_columns(result: SeedResult) -> dict[str, list[str]]:
    """Formatted CSV columns of a seed result.

    Args:
        result (SeedResult): A seed result with a report.

    Returns:
        dict[str, list[str]]: Columns `t`, `z`, `a_1..a_N`, `regret_1..regret_N` and
            `violation_<i>_<m>`, players and constraints numbered from 1.
    """
    assert result.report is not None
    report = result.report
    num_rounds = len(result.contexts)
    num_players = len(result.num_constraints)
    columns: dict[str, list[str]] = {
        "t": [str(t) for t in range(1, num_rounds + 1)],
        "z": [str(z) for z in result.contexts],
    }
    for i in range(num_players):
        columns[f"a_{i + 1}"] = [str(a[i]) for a in result.joint_actions]
    for i in range(num_players):
        regret = report.regret[i]
        values = np.full(num_rounds, np.nan) if regret is None else regret
        columns[f"regret_{i + 1}"] = [format_number(v) for v in values]
    for i, m in enumerate(result.num_constraints):
        for j in range(m):
            values = report.violations[i][:, j]
            columns[f"violation_{i + 1}_{j + 1}"] = [format_number(v) for v in values]
    return columns


def write_trajectory_csv(path: Path, columns: Mapping[str, Sequence[str]]) -> None:
    """Write formatted columns to a CSV file with a header row."""
    path.parent.mkdir(parents=True, exist_ok=True)
    names = list(columns)
    num_rows = len(columns["t"]) if names else 0
    with open(path, "w", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(names)
        for r in range(num_rows):
            writer.writerow([columns[name][r] for name in names])


def read_trajectory_csv(path: Path) -> dict[str, list[float]]:
    """Read the metric columns of a trajectory CSV as floats."""
    with open(path, newline="") as fp:
        reader = csv.reader(fp)
        names = next(reader)
        rows = list(reader)
    return {
        name: [float(row[k]) for row in rows]
        for k, name in enumerate(names)
        if name.startswith(("regret_", "violation_"))
    }


def aggregate(tables: Sequence[Mapping[str, Sequence[float]]]) -> dict[str, Any]:
    """Mean and standard deviation across seeds of every metric column at every round.

    Shorter tables (halted runs) and NaN entries are ignored at the rounds they do not
    cover, rounds no seed covers get `None`.

    Args:
        tables (Sequence[Mapping[str, Sequence[float]]]): Metric columns of every seed.

    Returns:
        dict[str, Any]: Per-round and final `mean`/`std` lists of every column.
    """
    names = sorted({name for table in tables for name in table})
    per_round: dict[str, Any] = {}
    final: dict[str, Any] = {}
    for name in names:
        columns = [np.asarray(t[name], dtype=np.float64) for t in tables if name in t]
        length = max((len(c) for c in columns), default=0)
        values = np.full((len(columns), length), np.nan)
        for k, c in enumerate(columns):
            values[k, : len(c)] = c
        valid = ~np.isnan(values)
        counts = valid.sum(axis=0)
        safe = np.where(valid, values, 0.0)
        mean = safe.sum(axis=0) / np.maximum(counts, 1)
        std = np.sqrt(
            np.where(valid, (values - mean) ** 2, 0.0).sum(axis=0) / np.maximum(counts, 1)
        )
        per_round[name] = {
            "mean": [_json_number(m) if n > 0 else None for m, n in zip(mean, counts)],
            "std": [_json_number(s) if n > 0 else None for s, n in zip(std, counts)],
        }
        last = [c[~np.isnan(c)][-1] for c in columns if np.any(~np.isnan(c))]
        final[name] = {
            "mean": _json_number(float(np.mean(last))) if last else None,
            "std": _json_number(float(np.std(last))) if last else None,
        }
    return {"per_round": per_round, "final": final}


def _seed_summary(result: SeedResult) -> dict[str, Any]:
    entry: dict[str, Any] = {"status": result.status.value}
    if result.error is not None:
        entry["error"] = result.error
    report = result.report
    if report is None:
        return entry
    entry["num_rounds"] = report.num_rounds
    entry["cce_epsilon"] = None if report.cce is None else _json_number(report.cce.epsilon)
    entry["clamp_events"] = list(report.clamp_events)
    if report.infeasible_player is not None:
        entry["infeasibility"] = {
            "player": report.infeasible_player + 1,
            "round": report.infeasible_round,
        }
    bounds = {}
    for i, evaluation in sorted(report.bounds.items()):
        final_violations = report.final_violations(i)
        bounds[f"player_{i + 1}"] = {
            "regret_bound": _json_number(evaluation.regret),
            "violation_bounds": [_json_number(v) for v in evaluation.violations],
            "expert_term": _json_number(evaluation.expert_term),
            "b_value": (
                None if evaluation.b_value is None else _json_number(evaluation.b_value)
            ),
            "infinite_context_regret_bound": (
                None
                if evaluation.infinite_context_regret is None
                else _json_number(evaluation.infinite_context_regret)
            ),
            "regret_within_bound": bool(report.final_regret(i) <= evaluation.regret),
            "violations_within_bound": [
                bool(v <= b) for v, b in zip(final_violations, evaluation.violations)
            ],
        }
    entry["bounds"] = bounds
    return entry


def write_variant_outputs(
    out_dir: Path, variant: str, num_rounds: int, results: Sequence[SeedResult]
) -> dict[str, Any]:
    """Write the CSV of every seed with a report and the summary of a variant.

    Args:
        out_dir (Path): Output directory of the experiment.
        variant (str): Name of the variant.
        num_rounds (int): Configured number of rounds.
        results (Sequence[SeedResult]): Seed results of the variant.

    Returns:
        dict[str, Any]: The summary document.
    """
    variant_dir = out_dir / variant
    tables = []
    for result in results:
        if result.report is None:
            continue
        columns = trajectory_columns(result)
        write_trajectory_csv(variant_dir / seed_file(result.seed), columns)
        tables.append(
            {
                name: [float(v) for v in values]
                for name, values in columns.items()
                if name.startswith(("regret_", "violation_"))
            }
        )
    summary = {
        "variant": variant,
        "num_rounds": num_rounds,
        "seeds": [r.seed for r in results],
        "runs": {str(r.seed): _seed_summary(r) for r in results},
        **aggregate(tables),
    }
    write_document(variant_dir / SUMMARY_FILE, summary)
    return summary


def write_outputs(
    out_dir: Path, config: ExperimentConfig, results: Mapping[str, Sequence[SeedResult]]
) -> None:
    """Write every output file of an experiment.

    Args:
        out_dir (Path): Output directory.
        config (ExperimentConfig): The experiment configuration.
        results (Mapping[str, Sequence[SeedResult]]): Seed results of every variant.
    """
    for variant, variant_results in results.items():
        write_variant_outputs(out_dir, variant, config.num_rounds, variant_results)
    metadata = {
        "config": canonical_config(config),
        "config_sha256": config_hash(config),
        "generator_scheme": (
            GENERATOR_SCHEME if config.game.generate is not None else None
        ),
        "seeds": list(config.seeds),
        "variants": list(results),
        "version": __version__,
    }
    write_document(out_dir / METADATA_FILE, metadata)


def any_failed(results: Mapping[str, Sequence[SeedResult]]) -> bool:
    """Whether any seed of any variant failed."""
    return any(
        r.status == SeedStatus.FAILED for rs in results.values() for r in rs
    )


def reaggregate(out_dir: Path) -> dict[str, dict[str, Any]]:
    """Recompute the per-round statistics of every variant from its CSV files.

    Args:
        out_dir (Path): Output directory of an experiment.

    Returns:
        dict[str, dict[str, Any]]: Per-round and final statistics of every variant.

    Raises:
        FileNotFoundError: If the directory holds no experiment metadata.
    """
    metadata = read_document(out_dir / METADATA_FILE)
    result = {}
    for variant in metadata["variants"]:
        variant_dir = out_dir / variant
        summary = read_document(variant_dir / SUMMARY_FILE)
        tables = [
            read_trajectory_csv(variant_dir / seed_file(seed))
            for seed in summary["seeds"]
            if (variant_dir / seed_file(seed)).exists()
        ]
        result[variant] = aggregate(tables)
    return result


def check_summaries(out_dir: Path) -> list[str]:
    """Variants whose summary does not match the re-aggregation of their CSV files."""
    mismatched = []
    for variant, stats in reaggregate(out_dir).items():
        summary = read_document(out_dir / variant / SUMMARY_FILE)
        if summary["per_round"] != stats["per_round"] or summary["final"] != stats["final"]:
            mismatched.append(variant)
    return mismatched
