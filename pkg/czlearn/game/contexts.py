"""Context schedules, producing the sequence of contexts revealed to the players."""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import Any

import numpy as np


class ContextSchedule(ABC):
    """Base class for context schedules.

    Subclasses should implement the `sample` method.
    """

    @abstractmethod
    def sample(self, num_rounds: int, seed: Any = None) -> list[Any]:
        """Produce the contexts of a run.

        Args:
            num_rounds (int): Number of rounds `T`.
            seed (Any, optional): Seed (or `SeedSequence`) of the draws. Defaults to
                `None`.

        Returns:
            list[Any]: The `T` contexts, in round order.
        """
        pass


class UniformContexts(ContextSchedule):
    """Context ids drawn i.i.d. uniformly from `{0, ..., num_contexts - 1}`."""

    def __init__(self, num_contexts: int) -> None:
        super().__init__()
        if num_contexts < 1:
            raise ValueError(f"Number of contexts must be positive, got {num_contexts}")
        self._num_contexts = num_contexts

    def sample(self, num_rounds: int, seed: Any = None) -> list[Any]:
        rng = np.random.default_rng(seed)
        return [int(z) for z in rng.integers(0, self._num_contexts, size=num_rounds)]


class UniformBoxContexts(ContextSchedule):
    """Context vectors drawn i.i.d. uniformly from `[0, 1]^dim`."""

    def __init__(self, dim: int) -> None:
        super().__init__()
        if dim < 1:
            raise ValueError(f"Context dimension must be positive, got {dim}")
        self._dim = dim

    def sample(self, num_rounds: int, seed: Any = None) -> list[Any]:
        rng = np.random.default_rng(seed)
        return list(rng.random((num_rounds, self._dim)))


class FixedContexts(ContextSchedule):
    """Replay of a fixed context sequence, which must cover every round."""

    def __init__(self, sequence: Sequence[Any]) -> None:
        super().__init__()
        if len(sequence) == 0:
            raise ValueError("Fixed context sequence is empty.")
        self._sequence = list(sequence)

    def sample(self, num_rounds: int, seed: Any = None) -> list[Any]:
        if len(self._sequence) < num_rounds:
            raise ValueError(
                f"Fixed context sequence has {len(self._sequence)} contexts, "
                f"{num_rounds} rounds requested."
            )
        return self._sequence[:num_rounds]


def context_schedule(schedule: ContextSchedule, seed: Any, num_rounds: int) -> list[Any]:
    """Produce the contexts of a run from a schedule, see `ContextSchedule.sample`."""
    return schedule.sample(num_rounds, seed)
