"""Configuration of the players."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from czlearn.gp import ConfidenceParams
from czlearn.kernels import Kernel, Product, SquaredExponential


class Algorithm(str, Enum):
    """Learning algorithm played by a player."""

    CZ_ADA_NORMAL_GP = "cz_ada_normal_gp"
    """Contextual, constrained learner."""
    C_ADA_NORMAL_GP = "c_ada_normal_gp"
    """Constrained learner that ignores the context."""
    GPMW = "gpmw"
    """Unconstrained learner that ignores the context."""
    Z_GPMW = "z_gpmw"
    """Contextual, unconstrained learner."""
    RANDOM = "random"
    """Uniformly random actions."""

    @property
    def constrained(self) -> bool:
        """Whether the algorithm filters actions by their constraint LCBs."""
        return self in (Algorithm.CZ_ADA_NORMAL_GP, Algorithm.C_ADA_NORMAL_GP)

    @property
    def contextual(self) -> bool:
        """Whether the algorithm keeps a distribution per context."""
        return self in (Algorithm.CZ_ADA_NORMAL_GP, Algorithm.Z_GPMW)


class ExpertRuleKind(str, Enum):
    """Expert rule driving the per-context distributions."""

    ADA_NORMAL_HEDGE = "ada_normal_hedge"
    REDUCED_HEDGE = "reduced_hedge"


@dataclass(frozen=True)
class FiniteContexts:
    """Finite context space `{0, ..., num_contexts - 1}`."""

    num_contexts: int

    def __post_init__(self) -> None:
        if self.num_contexts < 1:
            raise ValueError(
                f"Number of contexts must be positive, got {self.num_contexts}"
            )

    @property
    def feature_dim(self) -> int:
        """Number of GP input coordinates used to encode a context."""
        return 1


@dataclass(frozen=True)
class EpsilonNetContexts:
    """Continuous context space `[0, 1]^dim` covered by a greedy epsilon-net. The
    radius is either given or derived from the Lipschitz product and the horizon.
    """

    dim: int
    epsilon: float | None = None
    lipschitz_product: float | None = None
    horizon: int | None = None

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"Context dimension must be positive, got {self.dim}")
        if self.epsilon is None:
            if self.lipschitz_product is None or self.horizon is None:
                raise ValueError(
                    "Epsilon-net contexts require either an epsilon or both a "
                    "Lipschitz product and a horizon."
                )
        elif not self.epsilon > 0:
            raise ValueError(f"Epsilon must be strictly positive, got {self.epsilon}")

    @property
    def feature_dim(self) -> int:
        """Number of GP input coordinates used to encode a context."""
        return self.dim

    def resolve_epsilon(self) -> float:
        """Radius of the L1 balls of the net."""
        if self.epsilon is not None:
            return self.epsilon
        assert self.lipschitz_product is not None and self.horizon is not None
        return default_epsilon(self.lipschitz_product, self.dim, self.horizon)


type ContextMode = FiniteContexts | EpsilonNetContexts


def default_epsilon(lipschitz_product: float, dim: int, horizon: int) -> float:
    """Radius `(L_r L_p)^(-2 / (d + 2)) * T^(-1 / (d + 2))` balancing the
    discretization error against the number of balls of the net.

    Args:
        lipschitz_product (float): Product of the Lipschitz constants of the reward
            and of the optimal policy.
        dim (int): Dimension of the context space.
        horizon (int): Number of rounds.

    Returns:
        float: The epsilon-net radius.
    """
    if lipschitz_product <= 0 or dim < 1 or horizon < 1:
        raise ValueError("Lipschitz product, dimension and horizon must be positive.")
    exponent = 1.0 / (dim + 2)
    return float(lipschitz_product ** (-2.0 * exponent) * horizon ** (-exponent))


def default_reward_kernel(num_players: int) -> Kernel:
    """Squared exponential with lengthscale 2 over the joint action times squared
    exponential with lengthscale 0.5 over the context.
    """
    return Product(
        SquaredExponential(2.0), SquaredExponential(0.5), split_index=num_players
    )


def default_constraint_kernel() -> Kernel:
    """Squared exponential with lengthscale 0.5 over the own action and context."""
    return SquaredExponential(0.5)


@dataclass(frozen=True)
class PlayerConfig:
    """Configuration of a single player of an `N`-player game."""

    num_players: int
    """Number `N` of players in the game."""
    num_actions: int
    """Number `K` of actions of this player."""
    context_mode: ContextMode
    """Context space seen by this player."""
    num_constraints: int = 0
    """Number `M` of constraints of this player."""
    algorithm: Algorithm = Algorithm.CZ_ADA_NORMAL_GP
    """Learning algorithm."""
    expert_rule: ExpertRuleKind = ExpertRuleKind.ADA_NORMAL_HEDGE
    """Expert rule, ignored by the GPMW baselines which always use reduced Hedge."""
    reward_kernel: Kernel | None = None
    """Kernel over `(a_1, ..., a_N, z)`, defaults to `default_reward_kernel`."""
    constraint_kernels: tuple[Kernel, ...] | None = None
    """One kernel over `(a_i, z)` per constraint, defaults to
    `default_constraint_kernel`."""
    reward_confidence: ConfidenceParams = field(default_factory=ConfidenceParams)
    """Confidence parameters of the reward."""
    constraint_confidence: tuple[ConfidenceParams, ...] | None = None
    """Confidence parameters of every constraint, defaults to the reward ones."""

    def __post_init__(self) -> None:
        if self.num_players < 1:
            raise ValueError(f"Number of players must be positive, got {self.num_players}")
        if self.num_actions < 2:
            raise ValueError(f"Number of actions must be at least 2, got {self.num_actions}")
        if self.num_constraints < 0:
            raise ValueError(
                f"Number of constraints must be non-negative, got {self.num_constraints}"
            )
        if self.reward_kernel is None:
            kernel = default_reward_kernel(self.num_players)
            object.__setattr__(self, "reward_kernel", kernel)
        if self.constraint_kernels is None:
            kernels = tuple(
                default_constraint_kernel() for _ in range(self.num_constraints)
            )
            object.__setattr__(self, "constraint_kernels", kernels)
        if self.constraint_confidence is None:
            confidence = tuple(
                self.reward_confidence for _ in range(self.num_constraints)
            )
            object.__setattr__(self, "constraint_confidence", confidence)
        assert self.constraint_kernels is not None
        assert self.constraint_confidence is not None
        if len(self.constraint_kernels) != self.num_constraints:
            raise ValueError(
                f"Expected {self.num_constraints} constraint kernels, "
                f"got {len(self.constraint_kernels)}"
            )
        if len(self.constraint_confidence) != self.num_constraints:
            raise ValueError(
                f"Expected {self.num_constraints} constraint confidence parameters, "
                f"got {len(self.constraint_confidence)}"
            )

    @property
    def effective_expert_rule(self) -> ExpertRuleKind:
        """Expert rule actually used by the algorithm."""
        if self.algorithm in (Algorithm.GPMW, Algorithm.Z_GPMW):
            return ExpertRuleKind.REDUCED_HEDGE
        return self.expert_rule

    @property
    def context_features(self) -> int:
        """Number of GP input coordinates encoding the context."""
        return self.context_mode.feature_dim

    def encode_context(self, context: object) -> np.ndarray:
        """Encode a context as GP input coordinates. Algorithms that ignore the context
        see a constant all-zero encoding.
        """
        if not self.algorithm.contextual:
            return np.zeros(self.context_features)
        if isinstance(self.context_mode, FiniteContexts):
            return np.array([float(int(context))])  # type: ignore
        return np.asarray(context, dtype=np.float64).reshape(-1)
