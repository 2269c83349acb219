"""
Thread-pool execution for batch work (pairs of sequences to compare).

Results keep input order; a task that raises yields its exception in place
so one bad pair does not abort the batch.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Callable, List, Optional, Sequence

logger = logging.getLogger(__name__)


class ParallelRunner:
    """
    Run tasks on a thread pool.

    Example:
        >>> runner = ParallelRunner(workers=4)
        >>> runner.map(lambda x: x * x, [1, 2, 3])
        [1, 4, 9]
    """

    def __init__(self, workers: Optional[int] = None):
        """
        Args:
            workers: Number of worker threads. None or 0 = CPU count.
        """
        self.workers = workers or os.cpu_count() or 4

    def run(
        self,
        tasks: Sequence[Callable[[], Any]],
        timeout: Optional[float] = None,
    ) -> List[Any]:
        """
        Run tasks in parallel.

        Args:
            tasks: Callables without arguments
            timeout: Optional overall timeout in seconds

        Returns:
            Results in task order; exceptions are returned, not raised
        """
        results: List[Any] = [None] * len(tasks)
        if not tasks:
            return results

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            future_to_index = {
                executor.submit(task): i
                for i, task in enumerate(tasks)
            }
            for future in as_completed(future_to_index, timeout=timeout):
                index = future_to_index[future]
                try:
                    results[index] = future.result()
                except Exception as e:
                    logger.debug("task %d failed: %s", index, e)
                    results[index] = e

        return results

    def map(
        self,
        func: Callable[[Any], Any],
        items: Sequence[Any],
        timeout: Optional[float] = None,
    ) -> List[Any]:
        """Apply func to every item in parallel, keeping order."""
        tasks = [lambda item=item: func(item) for item in items]
        return self.run(tasks, timeout=timeout)


def run_parallel(
    tasks: Sequence[Callable[[], Any]],
    workers: Optional[int] = None,
    timeout: Optional[float] = None,
) -> List[Any]:
    """Convenience wrapper around :class:`ParallelRunner`."""
    return ParallelRunner(workers=workers).run(tasks, timeout=timeout)


__all__ = ['ParallelRunner', 'run_parallel']
