"""Package for positive semi-definite kernels used by the GP models."""

from czlearn.kernels.base import Kernel, KernelRegistry, as_points
from czlearn.kernels.polynomial import Polynomial
from czlearn.kernels.product import Product
from czlearn.kernels.stationary import Matern, SquaredExponential
