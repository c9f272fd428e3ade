"""Process-pool iteration over a lazy sequence, used to run independent seeds of an
experiment in parallel.
"""

from collections.abc import Callable, Iterator, Sequence
from multiprocessing import get_context
from multiprocessing.pool import Pool
from signal import SIG_IGN, SIGINT, signal


class _Fetcher[T]:
    def __init__(
        self, seq: Sequence[T], callback: Callable[[int], None] | None = None
    ) -> None:
        self._seq = seq
        self._callback = callback

    def fetch(self, idx: int) -> tuple[int, T]:
        item = self._seq[idx]
        if self._callback is not None:
            self._callback(idx)
        return idx, item


def _ignore_sigint() -> None:  # pragma: no cover
    signal(SIGINT, SIG_IGN)


class _GrabContext[T]:
    def __init__(
        self,
        num_workers: int,
        prefetch: int,
        keep_order: bool,
        seq: Sequence[T],
        callback: Callable[[int], None] | None,
    ) -> None:
        self._num_workers = num_workers
        self._prefetch = prefetch
        self._keep_order = keep_order
        self._seq = seq
        self._callback = callback
        self._pool: Pool | None = None

    def __enter__(self) -> Iterator[tuple[int, T]]:
        if self._num_workers == 0:
            fetcher = _Fetcher(self._seq, callback=self._callback)
            return (fetcher.fetch(i) for i in range(len(self._seq)))

        # workers only build the items, callbacks run in the parent process
        fetcher = _Fetcher(self._seq)
        self._pool = get_context("spawn").Pool(
            self._num_workers if self._num_workers > 0 else None,
            initializer=_ignore_sigint,
        )
        pool = self._pool.__enter__()
        indices = range(len(self._seq))
        if self._keep_order:
            it = pool.imap(fetcher.fetch, indices, chunksize=self._prefetch)
        else:
            it = pool.imap_unordered(fetcher.fetch, indices, chunksize=self._prefetch)
        return self._notify(it)

    def _notify(self, it: Iterator[tuple[int, T]]) -> Iterator[tuple[int, T]]:
        for idx, item in it:
            if self._callback is not None:
                self._callback(idx)
            yield idx, item

    def __exit__(self, exc_type, exc_value, traceback) -> None:
        if self._pool is not None:
            self._pool.__exit__(exc_type, exc_value, traceback)
            self._pool = None


class Grabber:
    """Iterates over a sequence, evaluating `seq[idx]` in worker processes.

    Items must be picklable, as must the sequence itself. With `num_workers=0`
    everything happens in the calling process.
    """

    def __init__(
        self, num_workers: int = 0, prefetch: int = 1, keep_order: bool = True
    ) -> None:
        """
        Args:
            num_workers (int, optional): Number of worker processes, 0 disables
                parallelism and a negative value uses one worker per CPU. Defaults to
                0.
            prefetch (int, optional): Chunk size handed to every worker. Defaults to 1.
            keep_order (bool, optional): Whether to yield the items in sequence order
                rather than in completion order. Defaults to `True`.
        """
        super().__init__()
        self.num_workers = num_workers
        self.prefetch = prefetch
        self.keep_order = keep_order

    def __call__[
        T
    ](
        self, seq: Sequence[T], *, callback: Callable[[int], None] | None = None
    ) -> _GrabContext[T]:
        """Create a context manager yielding `(idx, seq[idx])` pairs.

        Args:
            seq (Sequence[T]): Sequence to iterate over.
            callback (Callable[[int], None] | None, optional): Called in the calling
                process with the index of every produced item. Defaults to `None`.

        Returns:
            _GrabContext[T]: Context manager over the produced pairs.

        Examples:
            ```python
            grabber = Grabber(num_workers=4)
            with grabber(seed_runs) as it:
                for idx, result in it:
                    print(idx, result.status)
            ```
        """
        return _GrabContext(
            self.num_workers, self.prefetch, self.keep_order, seq, callback=callback
        )
