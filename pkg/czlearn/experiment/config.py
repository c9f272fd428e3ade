"""Experiment configuration: pydantic models of the config documents and the
construction of the games, players and context schedules they describe.
"""

from pathlib import Path
from typing import Any, Literal, Self

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from czlearn.game import (
    ContextSchedule,
    FixedContexts,
    GameDocument,
    GeneratorParams,
    TabularGame,
    UniformContexts,
    generate_random_game,
)
from czlearn.gp import ConfidenceParams
from czlearn.kernels import Kernel
from czlearn.metrics import RegretConvention
from czlearn.parsers import JSONParser, ParserRegistry, YAMLParser, read_document
from czlearn.strategy import Algorithm, ExpertRuleKind, FiniteContexts, PlayerConfig


class ConfigError(ValueError):
    """Invalid experiment configuration. The message lists every violation, addressed
    by its path in the document.
    """

    def __init__(self, errors: list[str]) -> None:
        super().__init__("\n".join(errors))
        self.errors = errors


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True, frozen=True)


class GenerateBlock(_Block):
    """Parameters of a randomly generated game."""

    num_players: int = Field(3, alias="N", ge=1)
    num_actions: int = Field(7, alias="K", ge=2)
    num_contexts: int = Field(5, alias="Z", ge=1)
    num_constraints: int = Field(1, alias="M", ge=0)
    action_lengthscale: float = Field(2.0, gt=0)
    context_lengthscale: float = Field(0.5, gt=0)
    constraint_lengthscale: float = Field(0.5, gt=0)
    num_gp_samples: int = Field(10, ge=1)
    points_per_sample: int = Field(10, ge=1)
    feasible_quantile: float = Field(0.25, ge=0, le=1)
    reward_noise: float = Field(1.0, ge=0)
    constraint_noise: float = Field(1.0, ge=0)
    seed: int | None = None
    """Seed of the game, the seed of the run if `None`."""

    def to_params(self) -> GeneratorParams:
        return GeneratorParams(
            num_players=self.num_players,
            num_actions=self.num_actions,
            num_contexts=self.num_contexts,
            num_constraints=self.num_constraints,
            action_lengthscale=self.action_lengthscale,
            context_lengthscale=self.context_lengthscale,
            constraint_lengthscale=self.constraint_lengthscale,
            num_gp_samples=self.num_gp_samples,
            points_per_sample=self.points_per_sample,
            feasible_quantile=self.feasible_quantile,
            reward_noise=self.reward_noise,
            constraint_noise=self.constraint_noise,
        )


class GameBlock(_Block):
    """Source of the game: exactly one of a generator block or the path of a
    serialized game.
    """

    generate: GenerateBlock | None = None
    path: Path | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> Self:
        if (self.generate is None) == (self.path is None):
            raise ValueError("Exactly one of 'generate' and 'path' must be given.")
        return self


class ConfidenceBlock(_Block):
    rkhs_bound: float = Field(1.0, alias="B", gt=0)
    noise_scale: float = Field(1.0, alias="sigma", ge=0)
    failure_prob: float = Field(0.1, alias="delta", gt=0, lt=1)
    beta_scale: float = Field(1.0, ge=0)

    def to_params(self, num_constraints: int) -> ConfidenceParams:
        return ConfidenceParams(
            rkhs_bound=self.rkhs_bound,
            noise_scale=self.noise_scale,
            failure_prob=self.failure_prob,
            num_constraints=num_constraints,
            beta_scale=self.beta_scale,
        )


def _check_kernel(spec: dict[str, Any] | None) -> dict[str, Any] | None:
    if spec is not None:
        Kernel.from_dict(spec)
    return spec


class PlayerBlock(_Block):
    """Algorithm and hyperparameters of a player."""

    algorithm: Algorithm = Algorithm.RANDOM
    expert_rule: ExpertRuleKind = ExpertRuleKind.ADA_NORMAL_HEDGE
    reward_kernel: dict[str, Any] | None = None
    """Tagged kernel over `(a_1, ..., a_N, z)`, the default product kernel if `None`."""
    constraint_kernel: dict[str, Any] | None = None
    """Tagged kernel over `(a_i, z)` shared by every constraint."""
    reward_confidence: ConfidenceBlock = ConfidenceBlock()
    constraint_confidence: ConfidenceBlock | None = None
    """Confidence parameters of the constraints, the reward ones if `None`."""

    @model_validator(mode="after")
    def _valid_kernels(self) -> Self:
        _check_kernel(self.reward_kernel)
        _check_kernel(self.constraint_kernel)
        return self


class ContextsBlock(_Block):
    mode: Literal["uniform", "fixed"] = "uniform"
    sequence: list[int] | None = None
    """Replayed context ids, required by the `fixed` mode."""

    @model_validator(mode="after")
    def _sequence_for_fixed(self) -> Self:
        if self.mode == "fixed" and not self.sequence:
            raise ValueError("The 'fixed' mode requires a non-empty 'sequence'.")
        return self


class BoundsBlock(_Block):
    enabled: bool = True
    """Whether to evaluate the bounds of the constrained contextual learners."""
    lipschitz_product: float | None = Field(None, gt=0)
    """Product of the Lipschitz constants of the reward and of the optimal policy."""


class ExperimentConfig(_Block):
    """Validated experiment configuration."""

    game: GameBlock
    players: list[PlayerBlock] | None = None
    """One block per player, player 1 runs `cz_ada_normal_gp` and the others play
    randomly if `None`."""
    sweep: list[Algorithm] | None = Field(None, min_length=1)
    """Algorithms substituted for player 1, one output variant each."""
    num_rounds: int = Field(alias="T", ge=1)
    contexts: ContextsBlock = ContextsBlock()
    seeds: list[int] = Field(min_length=1)
    output_dir: Path = Path("results")
    parallel: int = Field(0, ge=0)
    """Number of worker processes running the seeds, 0 runs them serially."""
    regret_convention: RegretConvention = RegretConvention.FIXED
    bounds: BoundsBlock = BoundsBlock()

    @model_validator(mode="after")
    def _consistent_players(self) -> Self:
        generate = self.game.generate
        if generate is not None and self.players is not None:
            if len(self.players) != generate.num_players:
                raise ValueError(
                    f"Game has {generate.num_players} players, "
                    f"{len(self.players)} player blocks given."
                )
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("Seeds must be unique.")
        return self

    @property
    def variants(self) -> list[Algorithm]:
        """Algorithms of player 1, one per output variant."""
        if self.sweep is not None:
            return list(dict.fromkeys(self.sweep))
        if self.players:
            return [self.players[0].algorithm]
        return [Algorithm.CZ_ADA_NORMAL_GP]

    def player_blocks(self, num_players: int) -> list[PlayerBlock]:
        """Player blocks of a game with `num_players` players."""
        if self.players is not None:
            if len(self.players) != num_players:
                raise ConfigError(
                    [
                        f".players: Game has {num_players} players, "
                        f"{len(self.players)} player blocks given."
                    ]
                )
            return list(self.players)
        first = PlayerBlock(algorithm=Algorithm.CZ_ADA_NORMAL_GP)
        return [first] + [PlayerBlock() for _ in range(num_players - 1)]


def _format_errors(error: ValidationError) -> list[str]:
    messages = []
    for e in error.errors():
        path = "".join(f".{p}" for p in e["loc"])
        messages.append(f"{path or '.'}: {e['msg']}")
    return messages


def parse_config(text: str, fmt: Literal["json", "yaml"] = "json") -> ExperimentConfig:
    """Parse and validate an experiment configuration document.

    Args:
        text (str): The document.
        fmt (Literal["json", "yaml"], optional): Format of the document. Defaults to
            `"json"`.

    Returns:
        ExperimentConfig: The validated configuration, defaults filled.

    Raises:
        ConfigError: If the document is malformed or violates the schema.
    """
    parser_cls = JSONParser if fmt == "json" else YAMLParser
    parser = parser_cls(ExperimentConfig)
    try:
        return parser.parse(text.encode())
    except ValidationError as e:
        raise ConfigError(_format_errors(e)) from e
    except (ValueError, yaml.YAMLError) as e:
        raise ConfigError([f".: Malformed {fmt} document: {e}"]) from e


def load_config(path: Path) -> ExperimentConfig:
    """Read and validate an experiment configuration file, JSON or YAML by extension.
    A relative game path is resolved against the directory of the file.

    Raises:
        ConfigError: If the file cannot be read or is invalid.
    """
    parser_cls = ParserRegistry.get(path.suffix)
    if parser_cls not in (JSONParser, YAMLParser):
        raise ConfigError([f".: Unsupported config format '{path.suffix}'"])
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError([f".: Cannot read '{path}': {e}"]) from e
    config = parse_config(text, "json" if parser_cls is JSONParser else "yaml")
    game_path = config.game.path
    if game_path is not None and not game_path.is_absolute():
        game = config.game.model_copy(update={"path": path.parent / game_path})
        config = config.model_copy(update={"game": game})
    return config


def load_game(config: ExperimentConfig, seed: int) -> TabularGame:
    """Generate or read the game of a run.

    Args:
        config (ExperimentConfig): The experiment configuration.
        seed (int): Seed of the run, used as the game seed unless the generator block
            sets one.

    Returns:
        TabularGame: The game.
    """
    generate = config.game.generate
    if generate is not None:
        game_seed = seed if generate.seed is None else generate.seed
        return generate_random_game(game_seed, generate.to_params())
    assert config.game.path is not None
    document = read_document(config.game.path, GameDocument)
    return TabularGame.from_document(document)


def build_player_configs(
    config: ExperimentConfig, game: TabularGame, variant: Algorithm | None = None
) -> list[PlayerConfig]:
    """Build the configuration of every player of a run.

    Args:
        config (ExperimentConfig): The experiment configuration.
        game (TabularGame): The game of the run.
        variant (Algorithm | None, optional): Algorithm substituted for player 1.
            Defaults to `None`.

    Returns:
        list[PlayerConfig]: One configuration per player.
    """
    blocks = config.player_blocks(game.num_players)
    if variant is not None:
        blocks[0] = blocks[0].model_copy(update={"algorithm": variant})
    result = []
    for i, block in enumerate(blocks):
        m = game.num_constraints[i]
        reward_kernel = (
            None if block.reward_kernel is None else Kernel.from_dict(block.reward_kernel)
        )
        constraint_kernels = None
        if block.constraint_kernel is not None:
            kernel = Kernel.from_dict(block.constraint_kernel)
            constraint_kernels = tuple(kernel for _ in range(m))
        constraint_block = block.constraint_confidence or block.reward_confidence
        result.append(
            PlayerConfig(
                num_players=game.num_players,
                num_actions=game.num_actions[i],
                context_mode=FiniteContexts(game.num_contexts),
                num_constraints=m,
                algorithm=block.algorithm,
                expert_rule=block.expert_rule,
                reward_kernel=reward_kernel,
                constraint_kernels=constraint_kernels,
                reward_confidence=block.reward_confidence.to_params(m),
                constraint_confidence=tuple(
                    constraint_block.to_params(m) for _ in range(m)
                ),
            )
        )
    return result


def build_schedule(config: ExperimentConfig, game: TabularGame) -> ContextSchedule:
    """Context schedule of a run."""
    if config.contexts.mode == "uniform":
        return UniformContexts(game.num_contexts)
    assert config.contexts.sequence is not None
    for z in config.contexts.sequence:
        if not 0 <= z < game.num_contexts:
            raise ValueError(f"Fixed context {z} is not in the context space.")
    return FixedContexts(config.contexts.sequence)
