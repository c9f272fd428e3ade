"""Product of two kernels acting on disjoint coordinate blocks."""

from typing import Any

import numpy as np

from czlearn.kernels.base import Kernel, check_dims


class Product(Kernel):
    """Product kernel `k(x, x') = k_left(x[:s], x'[:s]) * k_right(x[s:], x'[s:])`,
    where `s` is the split index. Typically used to combine a kernel over the joint
    action coordinates with a kernel over the context coordinates.
    """

    def __init__(self, left: Kernel, right: Kernel, split_index: int) -> None:
        """
        Args:
            left (Kernel): Kernel acting on the first `split_index` coordinates.
            right (Kernel): Kernel acting on the remaining coordinates.
            split_index (int): Index partitioning the input vector, both blocks must be
                non-empty.
        """
        super().__init__()
        if int(split_index) != split_index or split_index < 1:
            raise ValueError(f"Split index must be a positive integer, got {split_index}")
        self._left = left
        self._right = right
        self._split_index = int(split_index)

    @property
    def left(self) -> Kernel:
        """Kernel acting on the first block of coordinates."""
        return self._left

    @property
    def right(self) -> Kernel:
        """Kernel acting on the second block of coordinates."""
        return self._right

    @property
    def split_index(self) -> int:
        """Index partitioning the input vectors."""
        return self._split_index

    @classmethod
    def type_tag(cls) -> str:
        return "product"

    def params(self) -> dict[str, Any]:
        return {
            "left": self._left.to_dict(),
            "right": self._right.to_dict(),
            "split_index": self._split_index,
        }

    @classmethod
    def _from_params(cls, params: dict[str, Any]) -> Kernel:
        try:
            left, right = params.pop("left"), params.pop("right")
            split_index = params.pop("split_index")
        except KeyError as e:
            raise ValueError(f"Product kernel is missing the {e} key.")
        if params:
            raise ValueError(f"Unknown product kernel keys: {sorted(params)}")
        return cls(Kernel.from_dict(left), Kernel.from_dict(right), split_index)

    def _split(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if x.shape[1] <= self._split_index:
            raise ValueError(
                f"Product kernel with split index {self._split_index} requires inputs "
                f"with more than {self._split_index} coordinates, got {x.shape[1]}"
            )
        return x[:, : self._split_index], x[:, self._split_index :]

    def cross(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        check_dims(x, y)
        (xl, xr), (yl, yr) = self._split(x), self._split(y)
        return self._left.cross(xl, yl) * self._right.cross(xr, yr)

    def diag(self, x: np.ndarray) -> np.ndarray:
        xl, xr = self._split(x)
        return self._left.diag(xl) * self._right.diag(xr)
