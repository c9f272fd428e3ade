"""Execution of the seeds of an experiment, serially or in worker processes."""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import overload

import numpy as np

from czlearn._register import LoopCallbackMixin
from czlearn.experiment.config import (
    ExperimentConfig,
    build_player_configs,
    build_schedule,
    load_game,
)
from czlearn.game import RunStatus, run
from czlearn.grabber import Grabber
from czlearn.metrics import MetricsReport, compute_report
from czlearn.strategy import Algorithm, make_player


class SeedStatus(str, Enum):
    """Outcome of the run of a seed."""

    COMPLETED = "completed"
    INFEASIBILITY_DECLARED = "infeasibility_declared"
    FAILED = "failed"


@dataclass
class SeedResult:
    """Result of the run of a seed."""

    seed: int
    status: SeedStatus
    contexts: list[int]
    """Context of every played round."""
    joint_actions: list[tuple[int, ...]]
    """Joint action of every played round."""
    num_constraints: tuple[int, ...] = ()
    """Number of constraints of every player."""
    report: MetricsReport | None = None
    """Metrics of the run, `None` if it failed."""
    error: str | None = None
    """Description of the failure, if any."""


def run_seed(config: ExperimentConfig, variant: Algorithm | None, seed: int) -> SeedResult:
    """Run a single seed of an experiment. Exceptions are captured in a failed result.

    Args:
        config (ExperimentConfig): The experiment configuration.
        variant (Algorithm | None): Algorithm substituted for player 1, if any.
        seed (int): Seed of the run.

    Returns:
        SeedResult: The result of the run.
    """
    try:
        game = load_game(config, seed)
        player_configs = build_player_configs(config, game, variant)
        player_seeds = np.random.SeedSequence([seed, 1]).spawn(len(player_configs))
        players = [
            make_player(c, i, s)
            for i, (c, s) in enumerate(zip(player_configs, player_seeds))
        ]
        trajectory = run(
            game,
            players,
            build_schedule(config, game),
            config.num_rounds,
            np.random.SeedSequence([seed, 0]),
        )
        report = compute_report(
            trajectory,
            game,
            players,
            convention=config.regret_convention,
            lipschitz_product=config.bounds.lipschitz_product,
            evaluate_bounds=config.bounds.enabled,
        )
    except Exception as e:
        return SeedResult(seed, SeedStatus.FAILED, [], [], error=f"{type(e).__name__}: {e}")

    status = (
        SeedStatus.COMPLETED
        if trajectory.status == RunStatus.COMPLETED
        else SeedStatus.INFEASIBILITY_DECLARED
    )
    return SeedResult(
        seed,
        status,
        contexts=[int(z) for z in trajectory.contexts],
        joint_actions=trajectory.joint_actions,
        num_constraints=game.num_constraints,
        report=report,
    )


class SeedRuns(Sequence[SeedResult]):
    """Lazy sequence of the seed runs of a variant, every item is computed on access.
    Picklable, so that the items can be computed by worker processes.
    """

    def __init__(
        self, config: ExperimentConfig, variant: Algorithm | None, seeds: Sequence[int]
    ) -> None:
        super().__init__()
        self._config = config
        self._variant = variant
        self._seeds = list(seeds)

    def __len__(self) -> int:
        return len(self._seeds)

    @overload
    def __getitem__(self, idx: int) -> SeedResult: ...
    @overload
    def __getitem__(self, idx: slice) -> Sequence[SeedResult]: ...
    def __getitem__(self, idx: int | slice) -> SeedResult | Sequence[SeedResult]:
        if isinstance(idx, slice):
            return SeedRuns(self._config, self._variant, self._seeds[idx])
        return run_seed(self._config, self._variant, self._seeds[idx])


class ExperimentRunner(LoopCallbackMixin):
    """Runs every seed of every variant of an experiment. Seeds of a variant run in
    up to `parallel` worker processes, results keep the order of the seeds.

    Progress can be followed by registering loop callbacks, every variant is a loop
    named after its algorithm.
    """

    def __init__(self, config: ExperimentConfig, parallel: int | None = None) -> None:
        """
        Args:
            config (ExperimentConfig): The experiment configuration.
            parallel (int | None, optional): Number of worker processes, the configured
                value if `None`. Defaults to `None`.
        """
        super().__init__()
        self._config = config
        self._parallel = config.parallel if parallel is None else parallel

    @property
    def config(self) -> ExperimentConfig:
        return self._config

    def __call__(self) -> dict[str, list[SeedResult]]:
        """Run the experiment.

        Returns:
            dict[str, list[SeedResult]]: Seed results of every variant, in seed order.
        """
        results: dict[str, list[SeedResult]] = {}
        sweep = self._config.sweep is not None
        grabber = Grabber(num_workers=self._parallel)
        for variant in self._config.variants:
            seq = SeedRuns(self._config, variant if sweep else None, self._config.seeds)
            results[variant.value] = [
                result for _, result in self.loop(seq, grabber, name=variant.value)
            ]
        return results
