"""Incremental Gaussian-process regression."""

import warnings
from typing import Any, Self

import numpy as np
from scipy.linalg import solve_triangular

from czlearn.kernels import Kernel, as_points

_BASE_JITTER = 1e-10
_MAX_JITTER = 1e-4


class GpModel:
    """Zero-mean Gaussian-process regression model with a lower-triangular Cholesky
    factor of `K + noise_variance * I` that is extended by a bordered rank-1 update on
    every new observation, without refactorizing the whole matrix.

    The model also keeps track of the realized information gain
    `1/2 log det(I + K / noise_variance)` of the observed inputs.

    Queries (`posterior`, `predict`) are read-only, `add_observation` is the only
    mutating method.
    """

    def __init__(
        self,
        kernel: Kernel,
        noise_variance: float,
        input_dim: int | None = None,
        capacity: int = 64,
    ) -> None:
        """
        Args:
            kernel (Kernel): Covariance function of the GP prior.
            noise_variance (float): Strictly positive variance of the observation noise.
            input_dim (int | None, optional): Dimension of the inputs. If `None`, it is
                inferred from the first observation. Defaults to `None`.
            capacity (int, optional): Initial number of observations the internal
                buffers can hold before growing. Defaults to 64.
        """
        if not np.isfinite(noise_variance) or noise_variance <= 0:
            raise ValueError(
                f"Noise variance must be strictly positive, got {noise_variance}"
            )
        if input_dim is not None and input_dim < 1:
            raise ValueError(f"Input dimension must be positive, got {input_dim}")
        self._kernel = kernel
        self._noise_variance = float(noise_variance)
        self._input_dim = input_dim
        self._capacity = max(1, capacity)
        self._n = 0
        self._x: np.ndarray | None = None
        self._y = np.zeros(self._capacity)
        self._chol = np.zeros((self._capacity, self._capacity))
        # forward solve of the targets, so that mean = c^T v with c = L^-1 k(X, x)
        self._v = np.zeros(self._capacity)
        self._info_gain = 0.0

    @classmethod
    def fit(
        cls, kernel: Kernel, noise_variance: float, inputs: Any, targets: Any
    ) -> Self:
        """Build a model and sequentially add a batch of observations.

        Args:
            kernel (Kernel): Covariance function of the GP prior.
            noise_variance (float): Variance of the observation noise.
            inputs (Any): Input points, array of shape `(n, dim)`.
            targets (Any): Observed values, array of shape `(n,)`.

        Returns:
            GpModel: The fitted model.
        """
        x = as_points(inputs)
        y = np.asarray(targets, dtype=np.float64).reshape(-1)
        if x.shape[0] != y.shape[0]:
            raise ValueError(
                f"Got {x.shape[0]} inputs and {y.shape[0]} targets, they must be equal."
            )
        model = cls(kernel, noise_variance, input_dim=x.shape[1], capacity=len(y))
        for xi, yi in zip(x, y):
            model.add_observation(xi, float(yi))
        return model

    @property
    def kernel(self) -> Kernel:
        """Covariance function of the model."""
        return self._kernel

    @property
    def noise_variance(self) -> float:
        """Variance of the observation noise."""
        return self._noise_variance

    @property
    def input_dim(self) -> int | None:
        """Dimension of the inputs, `None` if still unknown."""
        return self._input_dim

    @property
    def num_observations(self) -> int:
        """Number of observations added to the model."""
        return self._n

    @property
    def inputs(self) -> np.ndarray:
        """Copy of the observed inputs, shape `(t, dim)`."""
        if self._x is None:
            return np.zeros((0, self._input_dim or 0))
        return self._x[: self._n].copy()

    @property
    def targets(self) -> np.ndarray:
        """Copy of the observed targets, shape `(t,)`."""
        return self._y[: self._n].copy()

    @property
    def cholesky(self) -> np.ndarray:
        """Copy of the lower-triangular factor of `K + noise_variance * I`."""
        return self._chol[: self._n, : self._n].copy()

    @property
    def alpha(self) -> np.ndarray:
        """Solution of `(K + noise_variance * I) alpha = targets`."""
        n = self._n
        return solve_triangular(
            self._chol[:n, :n], self._v[:n], lower=True, trans="T", check_finite=False
        )

    @property
    def info_gain(self) -> float:
        """Realized information gain `1/2 log det(I + K / noise_variance)`."""
        return self._info_gain

    def _check_points(self, x: Any) -> np.ndarray:
        points = as_points(x)
        if self._input_dim is not None and points.shape[1] != self._input_dim:
            raise ValueError(
                f"Input dimension mismatch: model expects {self._input_dim}, "
                f"got {points.shape[1]}"
            )
        return points

    def _grow(self) -> None:
        new_capacity = 2 * self._capacity
        chol = np.zeros((new_capacity, new_capacity))
        chol[: self._n, : self._n] = self._chol[: self._n, : self._n]
        self._chol = chol
        self._y = np.concatenate([self._y, np.zeros(new_capacity - self._capacity)])
        self._v = np.concatenate([self._v, np.zeros(new_capacity - self._capacity)])
        assert self._x is not None
        x = np.zeros((new_capacity, self._x.shape[1]))
        x[: self._n] = self._x[: self._n]
        self._x = x
        self._capacity = new_capacity

    def _project(self, points: np.ndarray) -> np.ndarray:
        n = self._n
        assert self._x is not None
        k_cross = self._kernel.cross(self._x[:n], points)
        return solve_triangular(
            self._chol[:n, :n], k_cross, lower=True, check_finite=False
        )

    def add_observation(self, x: Any, y: float) -> Self:
        """Append an observation `(x, y)` to the model.

        Args:
            x (Any): Input vector.
            y (float): Observed value.

        Returns:
            GpModel: The model itself, conditioned on one more observation.

        Raises:
            ValueError: If `y` is not finite or `x` has the wrong dimension.
            np.linalg.LinAlgError: If the bordered Cholesky update breaks down even
                after adding the maximum allowed jitter.
        """
        point = self._check_points(x)
        if point.shape[0] != 1:
            raise ValueError("Observations must be added one input vector at a time.")
        y = float(y)
        if not np.isfinite(y):
            raise ValueError(f"Observed value must be finite, got {y}")
        if self._x is None:
            self._input_dim = point.shape[1]
            self._x = np.zeros((self._capacity, self._input_dim))
        if self._n == self._capacity:
            self._grow()

        n = self._n
        kxx = float(self._kernel.diag(point)[0])
        c = self._project(point)[:, 0] if n > 0 else np.zeros(0)
        explained = float(c @ c)
        prior_var = max(kxx - explained, 0.0)

        jitter = _BASE_JITTER * max(kxx, 1.0)
        pivot = kxx + self._noise_variance + jitter - explained
        while pivot <= 0:
            jitter *= 10
            if jitter >= _MAX_JITTER:
                raise np.linalg.LinAlgError(
                    f"Bordered Cholesky update failed at observation {n + 1}, "
                    f"jitter would exceed {_MAX_JITTER}"
                )
            warnings.warn(
                f"Escalating GP jitter to {jitter:.1e} at observation {n + 1}.",
                RuntimeWarning,
            )
            pivot = kxx + self._noise_variance + jitter - explained

        diag = np.sqrt(pivot)
        self._chol[n, :n] = c
        self._chol[n, n] = diag
        self._v[n] = (y - float(c @ self._v[:n])) / diag
        self._x[n] = point[0]
        self._y[n] = y
        self._n += 1
        self._info_gain += 0.5 * np.log1p(prior_var / self._noise_variance)
        return self

    def predict(self, x: Any) -> tuple[np.ndarray, np.ndarray]:
        """Posterior mean and standard deviation at a batch of points.

        Args:
            x (Any): Query points, array of shape `(m, dim)`.

        Returns:
            tuple[np.ndarray, np.ndarray]: Posterior means and standard deviations,
                both of shape `(m,)`.
        """
        points = self._check_points(x)
        prior_var = self._kernel.diag(points)
        if self._n == 0:
            return np.zeros(points.shape[0]), np.sqrt(np.maximum(prior_var, 0.0))
        c = self._project(points)
        mean = c.T @ self._v[: self._n]
        var = prior_var - np.sum(c * c, axis=0)
        return mean, np.sqrt(np.maximum(var, 0.0))

    def posterior(self, x: Any) -> tuple[float, float]:
        """Posterior mean and standard deviation at a single point.

        Args:
            x (Any): Query vector.

        Returns:
            tuple[float, float]: Posterior mean and (non-negative) standard deviation.
        """
        mean, std = self.predict(x)
        if mean.shape[0] != 1:
            raise ValueError("Posterior expects a single query vector, use `predict`.")
        return float(mean[0]), float(std[0])
