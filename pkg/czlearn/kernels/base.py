"""Base classes for czlearn kernels."""

from abc import ABC, ABCMeta, abstractmethod
from collections.abc import KeysView, Mapping
from typing import Any

import numpy as np


class KernelRegistry:
    """Container for currently registered kernels, allowing kernels to be rebuilt from
    their tagged dictionary representation (e.g. `{"type": "matern", ...}`).
    """

    _registered_kernels: dict[str, type["Kernel"]] = {}

    @classmethod
    def get(cls, key: str) -> type["Kernel"] | None:
        """Get the kernel class for a given type tag.

        Args:
            key (str): Type tag of the kernel.

        Returns:
            type[Kernel]: Kernel class for the given tag, or None if no kernel is
                currently registered under that tag.
        """
        return cls._registered_kernels.get(key)

    @classmethod
    def keys(cls) -> KeysView[str]:
        """Get the tags of the currently registered kernels."""
        return cls._registered_kernels.keys()


class _KernelMeta(ABCMeta):
    def __new__(
        cls,
        name: str,
        bases: tuple[type, ...],
        namespace: dict[str, Any],
        /,
        **kwargs: Any,
    ):
        the_cls: type["Kernel"] = super().__new__(cls, name, bases, namespace, **kwargs)  # type: ignore
        tag = the_cls.type_tag()  # type: ignore
        if tag is not None:
            KernelRegistry._registered_kernels[tag] = the_cls
        return the_cls


def as_points(points: Any) -> np.ndarray:
    """Convert a single vector or a list of vectors into a 2D float array of shape
    `(n, dim)`.
    """
    array = np.asarray(points, dtype=np.float64)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    elif array.ndim == 1:
        array = array.reshape(1, -1)
    elif array.ndim != 2:
        raise ValueError(f"Expected a vector or a list of vectors, got shape {array.shape}")
    return array


class Kernel(ABC, metaclass=_KernelMeta):
    """Base class for positive semi-definite kernel functions.

    Subclasses should implement the `cross`, `diag`, `params` and `type_tag` methods.
    Kernels are immutable after construction, every method is a pure function of its
    inputs and can be safely called from concurrent executors.

    All subclasses of this class are automatically registered in the `KernelRegistry`
    on import, under the tag returned by `type_tag`.
    """

    @classmethod
    @abstractmethod
    def type_tag(cls) -> str | None:
        """Get the tag used to identify the kernel in serialized configurations."""
        pass

    @abstractmethod
    def cross(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Evaluate the kernel between every pair of rows of two point sets.

        Args:
            x (np.ndarray): Array of shape `(n, dim)`.
            y (np.ndarray): Array of shape `(m, dim)`.

        Returns:
            np.ndarray: Matrix of shape `(n, m)` with entry `(i, j)` equal to
                `k(x[i], y[j])`.

        Raises:
            ValueError: If the dimensions of the two point sets are inconsistent.
        """
        pass

    @abstractmethod
    def diag(self, x: np.ndarray) -> np.ndarray:
        """Evaluate `k(x[i], x[i])` for every row of a point set."""
        pass

    @abstractmethod
    def params(self) -> dict[str, Any]:
        """Get the hyperparameters of the kernel as a JSON-compatible dictionary."""
        pass

    def __call__(self, x: Any, y: Any) -> float:
        """Evaluate the kernel on a pair of vectors.

        Args:
            x (Any): First input vector.
            y (Any): Second input vector.

        Returns:
            float: The kernel value `k(x, y)`.

        Raises:
            ValueError: If the two vectors have different dimensions.
        """
        x_, y_ = as_points(x), as_points(y)
        if x_.shape[0] != 1 or y_.shape[0] != 1:
            raise ValueError("Kernel evaluation expects two single vectors.")
        return float(self.cross(x_, y_)[0, 0])

    def gram(self, points: Any) -> np.ndarray:
        """Build the symmetric Gram matrix of a non-empty list of points.

        Args:
            points (Any): List of vectors, or array of shape `(n, dim)`.

        Returns:
            np.ndarray: Symmetric matrix `G` of shape `(n, n)` with
                `G[i, j] = k(points[i], points[j])`.

        Raises:
            ValueError: If the point list is empty or has inconsistent dimensions.
        """
        x = as_points(points)
        if x.shape[0] == 0:
            raise ValueError("Cannot build the Gram matrix of an empty point set.")
        gram = self.cross(x, x)
        upper = np.triu(gram)
        return upper + np.triu(gram, 1).T

    def to_dict(self) -> dict[str, Any]:
        """Serialize the kernel to a tagged dictionary."""
        return {"type": self.type_tag(), **self.params()}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Kernel":
        """Build a kernel from its tagged dictionary representation.

        Args:
            data (Mapping[str, Any]): Dictionary with a `type` key naming a registered
                kernel, plus the kernel hyperparameters.

        Returns:
            Kernel: The kernel instance.

        Raises:
            ValueError: If the tag is missing or unknown, or the hyperparameters are
                invalid.
        """
        params = dict(data)
        tag = params.pop("type", None)
        if tag is None:
            raise ValueError("Kernel specification is missing the 'type' key.")
        kernel_cls = KernelRegistry.get(tag)
        if kernel_cls is None:
            raise ValueError(
                f"Unknown kernel type '{tag}', available: {sorted(KernelRegistry.keys())}"
            )
        return kernel_cls._from_params(params)

    @classmethod
    def _from_params(cls, params: dict[str, Any]) -> "Kernel":
        try:
            return cls(**params)
        except TypeError as e:
            raise ValueError(f"Invalid parameters for kernel '{cls.type_tag()}': {e}")

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{self.__class__.__name__}({args})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Kernel):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(repr(self))


def check_dims(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape[1] != y.shape[1]:
        raise ValueError(
            f"Dimension mismatch between inputs: {x.shape[1]} != {y.shape[1]}"
        )


def check_positive(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"Kernel {name} must be strictly positive, got {value}")
    return value
