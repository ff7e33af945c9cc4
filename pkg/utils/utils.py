# utils/utils.py

import logging
import time
from typing import List, Sequence, Tuple, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


class Stopwatch:
    """
    Замер времени выполнения блока в миллисекундах:
        with Stopwatch() as sw:
            ...
        sw.ms
    """

    def __init__(self) -> None:
        self._start = 0.0
        self._stop = None

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        self._stop = None
        return self

    def __exit__(self, *exc) -> None:
        self._stop = time.perf_counter()

    @property
    def ms(self) -> int:
        end = self._stop if self._stop is not None else time.perf_counter()
        return int(round((end - self._start) * 1000))


def parse_int_list(text: str) -> Tuple[int, ...]:
    """'2,3,2' или '2 3 2' -> (2, 3, 2)."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise ValueError("пустой список чисел")
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise ValueError(f"ожидался список целых чисел, получено {text!r}") from None


def chunked(items: Sequence[T], parts: int) -> List[Sequence[T]]:
    """Делит последовательность на не более чем parts непрерывных кусков почти равной длины."""
    parts = max(1, min(parts, len(items)))
    size, extra = divmod(len(items), parts)
    out = []
    start = 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        out.append(items[start:end])
        start = end
    return out
