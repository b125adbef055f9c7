"""
Batch evaluation of independent grid points (stroke samples, sweep rows).
"""

import concurrent.futures
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Sequence

import psutil


class BatchProcessor:
    """
    Evaluates a function over many inputs in parallel and returns results in input order.
    """

    def __init__(self, max_workers: Optional[int] = None, logger: Optional[logging.Logger] = None):
        """
        Initialize the batch processor.

        Args:
            max_workers: Maximum number of parallel workers. If None, the number of
                physical cores is used.
            logger: Logger instance to use.
        """
        self.logger = logger or logging.getLogger(__name__)

        if max_workers is None:
            self.max_workers = max(1, psutil.cpu_count(logical=False) or 1)
        else:
            self.max_workers = max(1, max_workers)

        self.logger.debug(f"BatchProcessor initialized with {self.max_workers} workers")

        self.stats = {
            "total_items": 0,
            "processed_items": 0,
            "errors": 0,
            "duration": 0.0,
        }

    def map_ordered(self, func: Callable[..., Any], items: Sequence[Any], **func_kwargs) -> List[Any]:
        """
        Apply ``func`` to every item; results come back in the order of ``items``.

        If any call fails, the exception of the lowest failing index is re-raised
        after the pool shuts down.

        Args:
            func: Function called as func(item, **func_kwargs)
            items: Inputs
            **func_kwargs: Extra keyword arguments for func

        Returns:
            List of results aligned with items
        """
        self.stats = {
            "total_items": len(items),
            "processed_items": 0,
            "errors": 0,
            "duration": 0.0,
        }
        if not items:
            return []

        start = time.time()
        results: List[Any] = [None] * len(items)
        errors: Dict[int, Exception] = {}

        if self.max_workers == 1 or len(items) == 1:
            try:
                for index, item in enumerate(items):
                    results[index] = func(item, **func_kwargs)
                    self.stats["processed_items"] += 1
            except Exception:
                self.stats["errors"] += 1
                raise
            finally:
                self.stats["duration"] = time.time() - start
            return results

        with concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_index = {
                executor.submit(func, item, **func_kwargs): index
                for index, item in enumerate(items)
            }
            for future in concurrent.futures.as_completed(future_to_index):
                index = future_to_index[future]
                try:
                    results[index] = future.result()
                    self.stats["processed_items"] += 1
                except Exception as e:
                    self.stats["errors"] += 1
                    self.logger.error(f"Error evaluating item {index}: {e}")
                    errors[index] = e

        self.stats["duration"] = time.time() - start
        self.logger.debug(f"Evaluated {self.stats['processed_items']}/{self.stats['total_items']} "
                          f"items in {self.stats['duration']:.3f} seconds")

        if errors:
            raise errors[min(errors)]
        return results

    def get_stats(self) -> Dict[str, Any]:
        return dict(self.stats)
