"""Context routers, mapping every observed context to the expert rule that owns it."""

from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from czlearn.experts import ExpertRule

type RuleFactory = Callable[[], ExpertRule]


class ContextRouter(ABC):
    """Base class for context routers. Every routed context is assigned a key and the
    expert rule associated with that key, rules are created lazily on first use.

    Subclasses should implement the `route` method.
    """

    def __init__(self, rule_factory: RuleFactory) -> None:
        """
        Args:
            rule_factory (RuleFactory): Callable creating a fresh expert rule.
        """
        super().__init__()
        self._rule_factory = rule_factory
        self._rules: dict[int, ExpertRule] = {}

    @property
    def rules(self) -> dict[int, ExpertRule]:
        """Expert rules created so far, indexed by routing key."""
        return dict(self._rules)

    def rule(self, key: int) -> ExpertRule:
        """Get the expert rule of a routing key, creating it if needed."""
        if key not in self._rules:
            self._rules[key] = self._rule_factory()
        return self._rules[key]

    @abstractmethod
    def route(self, context: Any) -> tuple[int, ExpertRule]:
        """Route a context.

        Args:
            context (Any): The observed context.

        Returns:
            tuple[int, ExpertRule]: The routing key and the expert rule owning the
                context.
        """
        pass


class FiniteRouter(ContextRouter):
    """One expert rule per context of a finite context space."""

    def __init__(self, rule_factory: RuleFactory, num_contexts: int) -> None:
        """
        Args:
            rule_factory (RuleFactory): Callable creating a fresh expert rule.
            num_contexts (int): Number of contexts.
        """
        super().__init__(rule_factory)
        self._num_contexts = num_contexts

    def route(self, context: Any) -> tuple[int, ExpertRule]:
        key = int(context)
        if key != context or not 0 <= key < self._num_contexts:
            raise ValueError(
                f"Context {context!r} is not in {{0, ..., {self._num_contexts - 1}}}"
            )
        return key, self.rule(key)


class PooledRouter(ContextRouter):
    """A single expert rule shared by every context."""

    def route(self, context: Any) -> tuple[int, ExpertRule]:
        return 0, self.rule(0)


class EpsilonNetRouter(ContextRouter):
    """Greedy covering of `[0, 1]^dim` with L1 balls of radius `epsilon`, one expert
    rule per ball center. A context farther than `epsilon` from every center becomes
    a new center, ties between centers go to the earliest one.
    """

    def __init__(self, rule_factory: RuleFactory, dim: int, epsilon: float) -> None:
        """
        Args:
            rule_factory (RuleFactory): Callable creating a fresh expert rule.
            dim (int): Dimension of the context space.
            epsilon (float): Radius of the L1 balls.
        """
        super().__init__(rule_factory)
        if not epsilon > 0:
            raise ValueError(f"Epsilon must be strictly positive, got {epsilon}")
        self._dim = dim
        self._epsilon = float(epsilon)
        self._centers: list[np.ndarray] = []

    @property
    def epsilon(self) -> float:
        """Radius of the L1 balls."""
        return self._epsilon

    @property
    def centers(self) -> Sequence[np.ndarray]:
        """Centers of the net, in order of creation."""
        return [c.copy() for c in self._centers]

    def route(self, context: Any) -> tuple[int, ExpertRule]:
        z = np.asarray(context, dtype=np.float64).reshape(-1)
        if z.shape[0] != self._dim:
            raise ValueError(
                f"Expected a context of dimension {self._dim}, got {z.shape[0]}"
            )
        if np.any(z < 0) or np.any(z > 1):
            raise ValueError(f"Context {z.tolist()} is outside the unit box.")
        if self._centers:
            distances = np.abs(np.stack(self._centers) - z).sum(axis=1)
            nearest = int(np.argmin(distances))
            if distances[nearest] <= self._epsilon:
                return nearest, self.rule(nearest)
        self._centers.append(z.copy())
        key = len(self._centers) - 1
        return key, self.rule(key)
