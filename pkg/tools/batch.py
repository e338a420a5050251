"""Execute a per-instance task batch in parallel processes."""

from collections.abc import Callable, Iterable, Iterator
from concurrent import futures
import logging
import os
import typing as t

log = logging.getLogger(__name__)


class TaskBatch:
    nproc = os.cpu_count() or 1  # use 1 when undetermined

    type AnyItem = t.Any

    def __init__(self, task: Callable[[AnyItem], t.Any], *, nproc: int | None = None):
        """`task` runs in worker processes, so it must be picklable
        (a module-level function or a `functools.partial` of one)."""
        self.task = task
        self.nproc = nproc or self.nproc

    def map(self, items: Iterable[AnyItem]) -> Iterator[tuple[AnyItem, t.Any]]:
        """Yields (item, result) pairs in submission order."""
        items = list(items)
        if self.nproc <= 1 or len(items) <= 1:
            results = map(self.task, items)
            for i, pair in enumerate(zip(items, results), start=1):
                log.info(f'[{i}/{len(items)}] {pair[0]}')
                yield pair
            return

        with futures.ProcessPoolExecutor(max_workers=self.nproc) as exec:
            for i, pair in enumerate(zip(items, exec.map(self.task, items)), start=1):
                log.info(f'[{i}/{len(items)}] {pair[0]}')
                yield pair
