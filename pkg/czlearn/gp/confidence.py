"""Confidence parameters, confidence-width schedule and confidence bounds."""

from dataclasses import dataclass
from typing import Any

import numpy as np

from czlearn.gp.model import GpModel


@dataclass(frozen=True)
class ConfidenceParams:
    """Parameters of the confidence bounds of one unknown function."""

    rkhs_bound: float = 1.0
    """Bound `B` on the RKHS norm of the unknown function."""
    noise_scale: float = 1.0
    """Sub-Gaussian scale `sigma` of the observation noise."""
    failure_prob: float = 0.1
    """Failure probability `delta`, strictly inside (0, 1)."""
    num_constraints: int = 0
    """Number `M` of constraint functions sharing the failure probability."""
    beta_scale: float = 1.0
    """Multiplier applied to the confidence width, for sensitivity studies."""

    def __post_init__(self) -> None:
        if not self.rkhs_bound > 0:
            raise ValueError(f"RKHS bound must be positive, got {self.rkhs_bound}")
        if not self.noise_scale >= 0:
            raise ValueError(f"Noise scale must be non-negative, got {self.noise_scale}")
        if not 0 < self.failure_prob < 1:
            raise ValueError(
                f"Failure probability must lie in (0, 1), got {self.failure_prob}"
            )
        if self.num_constraints < 0:
            raise ValueError(
                f"Number of constraints must be non-negative, got {self.num_constraints}"
            )
        if not self.beta_scale >= 0:
            raise ValueError(f"Beta scale must be non-negative, got {self.beta_scale}")


def beta(params: ConfidenceParams, info_gain_prev: float) -> float:
    """Width of the confidence bounds:

    `B + sigma * sqrt(2 * (gamma + 1 + log(2 * (M + 1) / delta)))`

    multiplied by `params.beta_scale`.

    Args:
        params (ConfidenceParams): Confidence parameters of the function.
        info_gain_prev (float): Information gain `gamma` of the observations collected
            before the current round.

    Returns:
        float: The confidence width.
    """
    if info_gain_prev < 0:
        raise ValueError(f"Information gain must be non-negative, got {info_gain_prev}")
    log_term = np.log(2.0 * (params.num_constraints + 1) / params.failure_prob)
    width = params.rkhs_bound + params.noise_scale * np.sqrt(
        2.0 * (info_gain_prev + 1.0 + log_term)
    )
    return float(params.beta_scale * width)


def ucb(model: GpModel, x: Any, beta: float) -> Any:
    """Upper confidence bound `mean + beta * std`. A single input vector returns a
    float, a 2D array of inputs returns an array.
    """
    return _bound(model, x, beta, 1.0)


def lcb(model: GpModel, x: Any, beta: float) -> Any:
    """Lower confidence bound `mean - beta * std`. A single input vector returns a
    float, a 2D array of inputs returns an array.
    """
    return _bound(model, x, beta, -1.0)


def _bound(model: GpModel, x: Any, beta: float, sign: float) -> Any:
    if beta < 0:
        raise ValueError(f"Confidence width must be non-negative, got {beta}")
    array = np.asarray(x, dtype=np.float64)
    mean, std = model.predict(array)
    values = mean + sign * beta * std
    if array.ndim <= 1:
        return float(values[0])
    return values
