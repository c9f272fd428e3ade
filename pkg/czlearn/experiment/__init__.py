"""Package for configuring, running and recording multi-seed experiments."""

from czlearn.experiment.config import (
    BoundsBlock,
    ConfidenceBlock,
    ConfigError,
    ContextsBlock,
    ExperimentConfig,
    GameBlock,
    GenerateBlock,
    PlayerBlock,
    build_player_configs,
    build_schedule,
    load_config,
    load_game,
    parse_config,
)
from czlearn.experiment.output import (
    aggregate,
    any_failed,
    check_summaries,
    config_hash,
    format_number,
    reaggregate,
    write_outputs,
    write_variant_outputs,
)
from czlearn.experiment.runner import (
    ExperimentRunner,
    SeedResult,
    SeedRuns,
    SeedStatus,
    run_seed,
)
