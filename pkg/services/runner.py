# services/runner.py

import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# Не чаще одного сообщения о прогрессе в столько секунд
_PROGRESS_INTERVAL = 5.0


def run_partitions(
    worker: Callable[[T], R],
    tasks: Sequence[T],
    jobs: int = 1,
    label: str = "",
) -> List[R]:
    """
    Выполняет worker над каждой частью перебора и возвращает результаты в порядке
    tasks. При jobs > 1 части раздаются пулу процессов; порядок результатов и,
    значит, итог от jobs не зависят.
    """
    total = len(tasks)
    results: List[Optional[R]] = [None] * total
    started = time.monotonic()
    last_report = started

    def _progress(done: int) -> None:
        nonlocal last_report
        now = time.monotonic()
        if done == total or now - last_report >= _PROGRESS_INTERVAL:
            last_report = now
            logger.info("%s: готово частей %d/%d (%.1f с)", label or "перебор", done, total, now - started)

    if jobs <= 1 or total <= 1:
        for i, task in enumerate(tasks):
            results[i] = worker(task)
            _progress(i + 1)
        return results  # type: ignore[return-value]

    workers = min(jobs, total)
    logger.info("%s: %d частей на %d процессах", label or "перебор", total, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(worker, task): i for i, task in enumerate(tasks)}
        try:
            for done, future in enumerate(as_completed(futures), 1):
                results[futures[future]] = future.result()
                _progress(done)
        except BaseException:
            for future in futures:
                future.cancel()
            raise
    return results  # type: ignore[return-value]
