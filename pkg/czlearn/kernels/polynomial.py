"""Polynomial kernel."""

from typing import Any

import numpy as np

from czlearn.kernels.base import Kernel, check_dims, check_positive


class Polynomial(Kernel):
    """Polynomial kernel `k(x, x') = (b + x^T x' / l)^degree`."""

    def __init__(self, bias: float = 0.0, lengthscale: float = 1.0, degree: int = 2):
        """
        Args:
            bias (float, optional): Non-negative bias `b`. Defaults to 0.
            lengthscale (float, optional): Strictly positive lengthscale. Defaults to 1.
            degree (int, optional): Strictly positive integer degree. Defaults to 2.
        """
        super().__init__()
        bias = float(bias)
        if not np.isfinite(bias) or bias < 0:
            raise ValueError(f"Kernel bias must be non-negative, got {bias}")
        if int(degree) != degree or degree < 1:
            raise ValueError(f"Kernel degree must be a positive integer, got {degree}")
        self._bias = bias
        self._lengthscale = check_positive("lengthscale", lengthscale)
        self._degree = int(degree)

    @property
    def bias(self) -> float:
        """Bias of the kernel."""
        return self._bias

    @property
    def lengthscale(self) -> float:
        """Lengthscale of the kernel."""
        return self._lengthscale

    @property
    def degree(self) -> int:
        """Degree of the kernel."""
        return self._degree

    @classmethod
    def type_tag(cls) -> str:
        return "polynomial"

    def params(self) -> dict[str, Any]:
        return {
            "bias": self._bias,
            "lengthscale": self._lengthscale,
            "degree": self._degree,
        }

    def cross(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        check_dims(x, y)
        return (self._bias + (x @ y.T) / self._lengthscale) ** self._degree

    def diag(self, x: np.ndarray) -> np.ndarray:
        return (self._bias + np.sum(x * x, axis=1) / self._lengthscale) ** self._degree
