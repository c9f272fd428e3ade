import time
from collections.abc import Sequence
from typing import overload

import pytest

from czlearn import Grabber


class RaisingSequence(Sequence[int]):
    def __init__(self, exception: Exception) -> None:
        super().__init__()
        self._exception = exception

    @overload
    def __getitem__(self, x: int, /) -> int: ...

    @overload
    def __getitem__(self, x: slice, /) -> Sequence[int]: ...

    def __getitem__(self, x: int | slice, /) -> int | Sequence[int]:  # type: ignore
        if x == 3:
            raise self._exception
        return 4

    def __len__(self) -> int:
        return 10


class SquaresSequence(Sequence[int]):
    def __init__(self, size: int) -> None:
        super().__init__()
        self._size = size

    @overload
    def __getitem__(self, x: int, /) -> int: ...

    @overload
    def __getitem__(self, x: slice, /) -> Sequence[int]: ...

    def __getitem__(self, x: int | slice, /) -> int | Sequence[int]:  # type: ignore
        if isinstance(x, slice):
            return [i * i for i in range(self._size)[x]]
        return x * x

    def __len__(self) -> int:
        return self._size


class TestGrabber:
    @pytest.mark.parametrize("workers", [0, 2])
    @pytest.mark.parametrize("prefetch", [1, 5])
    @pytest.mark.parametrize("keep_order", [True, False])
    def test_call(self, workers: int, prefetch: int, keep_order: bool) -> None:
        seq = SquaresSequence(30)
        grabber = Grabber(num_workers=workers, prefetch=prefetch, keep_order=keep_order)
        with grabber(seq) as ctx:
            pairs = list(ctx)
        assert sorted(pairs) == [(i, i * i) for i in range(30)]
        if keep_order:
            assert [i for i, _ in pairs] == list(range(30))

    @pytest.mark.parametrize("workers", [0, 2])
    def test_callback(self, workers: int) -> None:
        calls: list[int] = []
        grabber = Grabber(num_workers=workers)
        with grabber(SquaresSequence(10), callback=calls.append) as ctx:
            for _ in ctx:
                pass
        assert sorted(calls) == list(range(10))

    @pytest.mark.parametrize("workers", [0, 2])
    @pytest.mark.parametrize("keep_order", [True, False])
    @pytest.mark.parametrize("exc", [RuntimeError(), ValueError()])
    def test_call_raises(self, workers: int, keep_order: bool, exc: Exception) -> None:
        time.sleep(0.1)
        grabber = Grabber(num_workers=workers, keep_order=keep_order)
        seq = RaisingSequence(exc)
        with pytest.raises(type(exc)):
            with grabber(seq) as ctx:
                for _ in ctx:
                    pass
