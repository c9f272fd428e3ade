"""Random games with smooth rewards and constraints drawn from Gaussian processes."""

from dataclasses import dataclass

import numpy as np

from czlearn.game.definition import TabularGame
from czlearn.gp import GpModel
from czlearn.kernels import Kernel, Product, SquaredExponential

GENERATOR_SCHEME = "gp-union-posterior-mean/v1"
"""Version stamp of the random-game construction."""


@dataclass(frozen=True)
class GeneratorParams:
    """Parameters of `generate_random_game`."""

    num_players: int = 3
    num_actions: int = 7
    num_contexts: int = 5
    num_constraints: int = 1
    action_lengthscale: float = 2.0
    """Lengthscale of the squared exponential kernel over the joint action."""
    context_lengthscale: float = 0.5
    """Lengthscale of the squared exponential kernel over the context."""
    constraint_lengthscale: float = 0.5
    """Lengthscale of the squared exponential kernel over the own action."""
    num_gp_samples: int = 10
    """Number of GP function samples the functions are built from."""
    points_per_sample: int = 10
    """Number of grid points every function sample is observed at."""
    conditioning_noise: float = 1e-3
    """Noise variance used when conditioning on the sampled values."""
    feasible_quantile: float = 0.25
    """Quantile of the constraint values shifted to 0."""
    reward_noise: float = 1.0
    """Standard deviation of the reward observation noise."""
    constraint_noise: float = 1.0
    """Standard deviation of the constraint observation noise."""

    def __post_init__(self) -> None:
        counts = {
            "num_players": self.num_players,
            "num_actions": self.num_actions,
            "num_contexts": self.num_contexts,
            "num_gp_samples": self.num_gp_samples,
            "points_per_sample": self.points_per_sample,
        }
        for name, value in counts.items():
            if value < 1:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.num_actions < 2:
            raise ValueError("Degenerate grid, at least 2 actions are needed.")
        if self.num_constraints < 0:
            raise ValueError("num_constraints must be non-negative.")
        scales = (
            self.action_lengthscale,
            self.context_lengthscale,
            self.constraint_lengthscale,
            self.conditioning_noise,
        )
        if any(not s > 0 for s in scales):
            raise ValueError("Lengthscales and conditioning noise must be positive.")
        if not 0 <= self.feasible_quantile <= 1:
            raise ValueError("feasible_quantile must lie in [0, 1].")
        if self.reward_noise < 0 or self.constraint_noise < 0:
            raise ValueError("Noise scales must be non-negative.")


def _smooth_function(
    kernel: Kernel,
    grid: np.ndarray,
    params: GeneratorParams,
    rng: np.random.Generator,
) -> np.ndarray:
    # condition one GP on the union of the sampled values and take its posterior mean
    num_points = min(params.points_per_sample, grid.shape[0])
    model = GpModel(
        kernel,
        params.conditioning_noise,
        input_dim=grid.shape[1],
        capacity=params.num_gp_samples * num_points,
    )
    for _ in range(params.num_gp_samples):
        idx = np.sort(rng.choice(grid.shape[0], size=num_points, replace=False))
        points = grid[idx]
        cov = kernel.gram(points) + 1e-8 * np.eye(num_points)
        values = np.linalg.cholesky(cov) @ rng.standard_normal(num_points)
        for x, y in zip(points, values):
            model.add_observation(x, float(y))
    mean, _ = model.predict(grid)
    return mean


def _min_max(values: np.ndarray) -> np.ndarray:
    low, high = values.min(), values.max()
    if not high - low > 1e-12:
        raise ValueError("Degenerate grid, the sampled function is constant.")
    return np.clip((values - low) / (high - low), 0.0, 1.0)


def generate_random_game(seed: int, params: GeneratorParams | None = None) -> TabularGame:
    """Generate a random feasible game, deterministically in the seed.

    Every player's reward is the posterior mean of a zero-mean GP with kernel
    `SE(action_lengthscale)` over the joint action times `SE(context_lengthscale)` over
    the context, conditioned on `num_gp_samples` prior function samples each observed
    at `points_per_sample` random grid points, then min-max scaled to [0, 1] over the
    whole table. Constraints are built the same way over the own action only (they
    do not depend on the context), min-max scaled and shifted by their
    `feasible_quantile`, then shifted again if some player has no action satisfying
    all of its constraints.

    Args:
        seed (int): Seed of the game.
        params (GeneratorParams | None, optional): Generator parameters. Defaults to
            `GeneratorParams()`.

    Returns:
        TabularGame: The generated game, stamped with the seed and `GENERATOR_SCHEME`.
    """
    params = params or GeneratorParams()
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    n, k, z = params.num_players, params.num_actions, params.num_contexts

    axes = [np.arange(k, dtype=np.float64)] * n + [np.arange(z, dtype=np.float64)]
    joint_grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n + 1)
    reward_kernel = Product(
        SquaredExponential(params.action_lengthscale),
        SquaredExponential(params.context_lengthscale),
        split_index=n,
    )
    action_grid = np.arange(k, dtype=np.float64)[:, None]
    constraint_kernel = SquaredExponential(params.constraint_lengthscale)

    rewards, constraints = [], []
    for _ in range(n):
        values = _smooth_function(reward_kernel, joint_grid, params, rng)
        rewards.append(_min_max(values).reshape((k,) * n + (z,)))

        table = np.empty((k, params.num_constraints))
        for m in range(params.num_constraints):
            g = _min_max(_smooth_function(constraint_kernel, action_grid, params, rng))
            table[:, m] = g - np.quantile(g, params.feasible_quantile)
        if params.num_constraints > 0:
            worst = table.max(axis=1)
            best = int(np.argmin(worst))
            if worst[best] > 0:
                table -= worst[best]
        constraints.append(np.repeat(table[:, None, :], z, axis=1))

    return TabularGame(
        rewards,
        constraints,
        reward_noise=[params.reward_noise] * n,
        constraint_noise=[[params.constraint_noise] * params.num_constraints] * n,
        seed=seed,
        scheme=GENERATOR_SCHEME,
    )
