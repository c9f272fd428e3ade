"""Main module of the czlearn CLI, containing the entry point and the commands."""

import traceback
from datetime import datetime
from pathlib import Path
from typing import Annotated

from rich.console import Console
from typer import Argument, Option, Typer

from czlearn.cli.utils import ProgressTracker, print_status_panel, summary_table
from czlearn.experiment import (
    ConfigError,
    ExperimentRunner,
    any_failed,
    check_summaries,
    load_config,
    write_outputs,
)
from czlearn.game import generate_random_game
from czlearn.parsers import read_document, write_document

version_help = "Show the current czlearn installation version."
config_help = "Path to the experiment configuration, JSON or YAML."
out_help = "Output directory, overrides the configured one."
parallel_help = "Number of worker processes running the seeds, 0 runs them serially."
seed_override_help = "Run this single seed instead of the configured ones."
game_out_help = "Destination of the serialized game, JSON or YAML by extension."
game_seed_help = "Seed of the game, defaults to the generator seed or the first seed."
report_dir_help = "Output directory of a previous run."


def _main_callback(
    version: Annotated[bool, Option(help=version_help, is_eager=True)] = False,
) -> None:
    from czlearn import __version__

    if version:
        print(__version__)
        exit(0)


czlearn_app = Typer(
    invoke_without_command=True,
    pretty_exceptions_enable=False,
    add_completion=False,
    no_args_is_help=True,
    callback=_main_callback,
)
"""Typer app of the czlearn CLI."""


def _load(config_path: Path):
    try:
        return load_config(config_path)
    except ConfigError as e:
        Console(stderr=True).print(f"[bold red]Invalid configuration:[/]\n{e}")
        exit(1)


@czlearn_app.command(help="Run an experiment and write its outputs.")
def run(
    config_path: Annotated[Path, Argument(help=config_help)],
    out: Annotated[Path | None, Option("--out", help=out_help)] = None,
    parallel: Annotated[int | None, Option("--parallel", help=parallel_help)] = None,
    seed_override: Annotated[
        int | None, Option("--seed-override", help=seed_override_help)
    ] = None,
) -> None:
    config = _load(config_path)
    if seed_override is not None:
        config = config.model_copy(update={"seeds": [seed_override]})
    if parallel is not None and parallel < 0:
        Console(stderr=True).print("[bold red]--parallel must be non-negative.[/]")
        exit(1)
    out_dir = out or config.output_dir

    start_time = datetime.now()
    runner = ExperimentRunner(config, parallel=parallel)
    progress = ProgressTracker.default_progress()
    ProgressTracker(progress).attach(runner)
    try:
        with progress:
            results = runner()
        write_outputs(out_dir, config, results)
    except KeyboardInterrupt:
        print_status_panel(start_time, "Experiment canceled.", "bold bright_black")
        exit(2)
    except Exception:
        print_status_panel(
            start_time, "Experiment failed.", "bold red", body=traceback.format_exc()
        )
        exit(2)

    if any_failed(results):
        failures = [
            f"{variant} seed {r.seed}: {r.error}"
            for variant, rs in results.items()
            for r in rs
            if r.error is not None
        ]
        print_status_panel(
            start_time,
            "Experiment completed with failed seeds.",
            "bold red",
            body="\n".join(failures),
        )
        exit(2)
    print_status_panel(
        start_time, f"Experiment completed, outputs in '{out_dir}'.", "bold green"
    )


@czlearn_app.command(name="generate-game", help="Generate and serialize a random game.")
def generate_game(
    config_path: Annotated[Path, Argument(help=config_help)],
    out: Annotated[Path, Option("--out", help=game_out_help)],
    seed: Annotated[int | None, Option("--seed", help=game_seed_help)] = None,
) -> None:
    config = _load(config_path)
    generate = config.game.generate
    if generate is None:
        Console(stderr=True).print(
            "[bold red]The configuration has no 'generate' game block.[/]"
        )
        exit(1)
    if seed is None:
        seed = generate.seed if generate.seed is not None else config.seeds[0]
    try:
        game = generate_random_game(seed, generate.to_params())
        write_document(out, game.to_document())
    except (OSError, ValueError) as e:
        Console(stderr=True).print(f"[bold red]Cannot generate the game:[/] {e}")
        exit(2)
    print(f"Game with seed {seed} written to '{out}'.")


@czlearn_app.command(help="Re-aggregate the outputs of a run and print its summary.")
def report(
    out_dir: Annotated[Path, Argument(help=report_dir_help)],
) -> None:
    console = Console()
    try:
        metadata = read_document(out_dir / "metadata.json")
        summaries = {
            variant: read_document(out_dir / variant / "summary.json")
            for variant in metadata["variants"]
        }
        mismatched = check_summaries(out_dir)
    except (OSError, KeyError, ValueError) as e:
        Console(stderr=True).print(f"[bold red]Cannot read the outputs:[/] {e}")
        exit(1)
    console.print(summary_table(summaries))
    if mismatched:
        console.print(
            "[bold red]Summaries inconsistent with the per-seed CSV files:[/] "
            + ", ".join(mismatched)
        )
        exit(2)


def main() -> None:  # pragma: no cover
    """czlearn CLI entry point."""
    czlearn_app()


if __name__ == "__main__":  # pragma: no cover
    main()
