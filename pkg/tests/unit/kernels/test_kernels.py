import math

import numpy as np
import pytest

from czlearn import Kernel, KernelRegistry, Matern, Polynomial, Product, SquaredExponential


class TestSquaredExponential:
    @pytest.mark.parametrize("x", [[0.0], [1.5, -2.0], [3.0, 0.0, 1.0]])
    def test_self_similarity(self, x: list[float]) -> None:
        assert SquaredExponential(0.7)(x, x) == 1.0

    def test_value(self) -> None:
        assert SquaredExponential(2.0)([0.0], [2.0]) == pytest.approx(math.exp(-0.5))

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(ValueError):
            SquaredExponential()([0.0], [1.0, 2.0])

    @pytest.mark.parametrize("lengthscale", [0.0, -1.0, float("nan")])
    def test_invalid_lengthscale(self, lengthscale: float) -> None:
        with pytest.raises(ValueError):
            SquaredExponential(lengthscale)


class TestMatern:
    @pytest.mark.parametrize(
        ["nu", "expected"],
        [
            [0.5, math.exp(-1.0)],
            [1.5, (1 + math.sqrt(3)) * math.exp(-math.sqrt(3))],
            [2.5, (1 + math.sqrt(5) + 5 / 3) * math.exp(-math.sqrt(5))],
        ],
    )
    def test_half_integer(self, nu: float, expected: float) -> None:
        assert Matern(1.0, nu)([0.0], [1.0]) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("nu", [0.5, 1.5, 2.5])
    def test_general_matches_closed_form(self, nu: float) -> None:
        x = np.linspace(0, 3, 7)[:, None]
        closed = Matern(0.8, nu).cross(x, x)
        general = Matern(0.8, nu + 1e-9).cross(x, x)
        assert np.allclose(closed, general, atol=1e-6)

    @pytest.mark.parametrize("nu", [0.5, 1.2, 2.5, 4.0])
    def test_zero_distance(self, nu: float) -> None:
        assert Matern(0.3, nu)([1.0, 2.0], [1.0, 2.0]) == 1.0

    def test_bounded(self) -> None:
        rng = np.random.default_rng(3)
        x = rng.normal(size=(20, 2)) * 5
        values = Matern(0.5, 3.3).cross(x, x)
        assert np.all(values >= 0) and np.all(values <= 1)


class TestPolynomial:
    def test_value(self) -> None:
        kernel = Polynomial(bias=0.0, lengthscale=1.0, degree=1)
        assert kernel([1.0, 2.0], [3.0, 4.0]) == pytest.approx(11.0)

    def test_degree_and_bias(self) -> None:
        kernel = Polynomial(bias=1.0, lengthscale=2.0, degree=3)
        assert kernel([1.0, 1.0], [2.0, 0.0]) == pytest.approx((1 + 2 / 2) ** 3)

    def test_diag(self) -> None:
        kernel = Polynomial(bias=0.5, degree=2)
        x = np.array([[1.0, 2.0], [0.0, 3.0]])
        assert np.allclose(kernel.diag(x), np.diag(kernel.cross(x, x)))

    @pytest.mark.parametrize(
        "params", [{"bias": -1.0}, {"degree": 0}, {"degree": 1.5}, {"lengthscale": 0}]
    )
    def test_invalid(self, params: dict) -> None:
        with pytest.raises(ValueError):
            Polynomial(**params)


class TestProduct:
    def test_value(self) -> None:
        kernel = Product(SquaredExponential(2.0), SquaredExponential(0.5), split_index=1)
        assert kernel([0.0, 0.0], [2.0, 0.0]) == pytest.approx(math.exp(-0.5))

    def test_factorwise(self) -> None:
        left, right = SquaredExponential(2.0), Matern(0.5, 1.5)
        kernel = Product(left, right, split_index=2)
        x, y = [0.0, 1.0, 2.0], [1.0, 3.0, 0.5]
        assert kernel(x, y) == pytest.approx(left(x[:2], y[:2]) * right(x[2:], y[2:]))

    def test_empty_block(self) -> None:
        kernel = Product(SquaredExponential(), SquaredExponential(), split_index=2)
        with pytest.raises(ValueError):
            kernel([0.0, 1.0], [1.0, 0.0])


class TestGram:
    def test_single_point(self) -> None:
        assert np.array_equal(SquaredExponential().gram([[0.3, 0.1]]), [[1.0]])

    def test_identical_points(self) -> None:
        gram = SquaredExponential().gram([[1.0], [1.0]])
        assert np.array_equal(gram, np.ones((2, 2)))

    def test_double_loop(self) -> None:
        kernel = SquaredExponential(1.0)
        points = np.random.default_rng(0).normal(size=(5, 3))
        gram = kernel.gram(points)
        for i in range(5):
            for j in range(5):
                assert gram[i, j] == pytest.approx(kernel(points[i], points[j]), abs=1e-12)

    @pytest.mark.parametrize(
        "kernel",
        [
            SquaredExponential(0.7),
            Matern(1.0, 0.5),
            Matern(1.0, 2.5),
            Polynomial(1.0, 1.0, 2),
            Product(SquaredExponential(2.0), SquaredExponential(0.5), split_index=1),
        ],
    )
    def test_symmetric_psd(self, kernel: Kernel) -> None:
        points = np.random.default_rng(1).uniform(size=(30, 2))
        gram = kernel.gram(points)
        assert np.array_equal(gram, gram.T)
        assert np.min(np.linalg.eigvalsh(gram)) >= -1e-8

    def test_empty(self) -> None:
        with pytest.raises(ValueError):
            SquaredExponential().gram(np.zeros((0, 2)))


class TestKernelRegistry:
    def test_registration(self) -> None:
        assert KernelRegistry.get("my_kernel") is None

        class MyKernel(Kernel):
            @classmethod
            def type_tag(cls) -> str:
                return "my_kernel"

            def cross(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
                return np.ones((x.shape[0], y.shape[0]))

            def diag(self, x: np.ndarray) -> np.ndarray:
                return np.ones(x.shape[0])

            def params(self) -> dict:
                return {}

        assert KernelRegistry.get("my_kernel") is MyKernel
        assert "my_kernel" in KernelRegistry.keys()
        assert Kernel.from_dict({"type": "my_kernel"}) == MyKernel()

    @pytest.mark.parametrize(
        "kernel",
        [
            SquaredExponential(2.0),
            Matern(0.5, 1.5),
            Polynomial(0.5, 2.0, 3),
            Product(SquaredExponential(2.0), Matern(0.5, 2.5), split_index=3),
        ],
    )
    def test_from_dict(self, kernel: Kernel) -> None:
        assert Kernel.from_dict(kernel.to_dict()) == kernel

    def test_tagged_spec(self) -> None:
        kernel = Kernel.from_dict({"type": "squared_exponential", "lengthscale": 2.0})
        assert kernel == SquaredExponential(2.0)

    @pytest.mark.parametrize(
        "spec",
        [
            {"lengthscale": 1.0},
            {"type": "unknown"},
            {"type": "squared_exponential", "foo": 1.0},
            {"type": "product", "left": {"type": "squared_exponential"}},
        ],
    )
    def test_from_dict_invalid(self, spec: dict) -> None:
        with pytest.raises(ValueError):
            Kernel.from_dict(spec)
