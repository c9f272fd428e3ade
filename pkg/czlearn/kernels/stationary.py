"""Stationary kernels, depending only on the euclidean distance between inputs."""

from typing import Any

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import gamma, kv

from czlearn.kernels.base import Kernel, check_dims, check_positive


class SquaredExponential(Kernel):
    """Squared exponential kernel `k(x, x') = exp(-s^2 / (2 l^2))`, where `s` is the
    euclidean distance between `x` and `x'` and `l` is the lengthscale.
    """

    def __init__(self, lengthscale: float = 1.0) -> None:
        """
        Args:
            lengthscale (float, optional): Strictly positive lengthscale. Defaults to 1.
        """
        super().__init__()
        self._lengthscale = check_positive("lengthscale", lengthscale)

    @property
    def lengthscale(self) -> float:
        """Lengthscale of the kernel."""
        return self._lengthscale

    @classmethod
    def type_tag(cls) -> str:
        return "squared_exponential"

    def params(self) -> dict[str, Any]:
        return {"lengthscale": self._lengthscale}

    def cross(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        check_dims(x, y)
        sq_dist = cdist(x, y, "sqeuclidean")
        return np.exp(-sq_dist / (2.0 * self._lengthscale**2))

    def diag(self, x: np.ndarray) -> np.ndarray:
        return np.ones(x.shape[0])


class Matern(Kernel):
    """Matérn kernel with lengthscale `l` and smoothness `nu`:

    `k(x, x') = 2^(1 - nu) / Gamma(nu) * r^nu * K_nu(r)`, with `r = s * sqrt(2 nu) / l`

    where `K_nu` is the modified Bessel function of the second kind. The half-integer
    cases `nu` in {1/2, 3/2, 5/2} are evaluated in closed form, the value at `s = 0`
    is the limit value 1.
    """

    def __init__(self, lengthscale: float = 1.0, nu: float = 2.5) -> None:
        """
        Args:
            lengthscale (float, optional): Strictly positive lengthscale. Defaults to 1.
            nu (float, optional): Strictly positive smoothness. Defaults to 2.5.
        """
        super().__init__()
        self._lengthscale = check_positive("lengthscale", lengthscale)
        self._nu = check_positive("smoothness", nu)

    @property
    def lengthscale(self) -> float:
        """Lengthscale of the kernel."""
        return self._lengthscale

    @property
    def nu(self) -> float:
        """Smoothness of the kernel."""
        return self._nu

    @classmethod
    def type_tag(cls) -> str:
        return "matern"

    def params(self) -> dict[str, Any]:
        return {"lengthscale": self._lengthscale, "nu": self._nu}

    def cross(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        check_dims(x, y)
        scaled = cdist(x, y, "euclidean") / self._lengthscale
        if self._nu == 0.5:
            return np.exp(-scaled)
        if self._nu == 1.5:
            r = np.sqrt(3.0) * scaled
            return (1.0 + r) * np.exp(-r)
        if self._nu == 2.5:
            r = np.sqrt(5.0) * scaled
            return (1.0 + r + r**2 / 3.0) * np.exp(-r)
        return self._general(np.sqrt(2.0 * self._nu) * scaled)

    def _general(self, r: np.ndarray) -> np.ndarray:
        result = np.ones_like(r)
        positive = r > 0
        rp = r[positive]
        coeff = 2.0 ** (1.0 - self._nu) / gamma(self._nu)
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            values = coeff * rp**self._nu * kv(self._nu, rp)
        # Bessel underflow at large distances yields nan
        result[positive] = np.nan_to_num(values, nan=0.0, posinf=1.0)
        return np.clip(result, 0.0, 1.0)

    def diag(self, x: np.ndarray) -> np.ndarray:
        return np.ones(x.shape[0])
