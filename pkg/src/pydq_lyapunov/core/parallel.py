"""Parallel execution utilities."""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any

from ..config import get_settings

logger = logging.getLogger(__name__)


def run_parallel(
    tasks: dict[str, Callable[[], Any]],
    max_workers: int | None = None,
    errors: dict[str, Exception] | None = None,
) -> dict[str, Any]:
    """Run multiple callables in parallel using threads.

    Args:
        tasks: Mapping of name -> callable. Each callable takes no arguments.
        max_workers: Maximum number of concurrent threads
            (default: ``settings.max_workers``).
        errors: Optional dict that receives name -> exception for failed tasks.

    Returns:
        Mapping of name -> result for tasks that succeeded, in the insertion
        order of *tasks* regardless of completion order.
        Failed tasks are logged at WARNING and omitted from results.
    """
    if not tasks:
        return {}
    if max_workers is None:
        max_workers = get_settings().max_workers

    finished: dict[str, Any] = {}

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_to_name = {
            executor.submit(fn): name for name, fn in tasks.items()
        }

        for future in as_completed(future_to_name):
            name = future_to_name[future]
            try:
                finished[name] = future.result()
            except Exception as e:
                logger.warning(f"[{name}] failed: {e}")
                if errors is not None:
                    errors[name] = e

    return {name: finished[name] for name in tasks if name in finished}
