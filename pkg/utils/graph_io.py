# utils/graph_io.py

"""
Текстовый формат графа (один граф на файл):

    n m
    u v          <- m строк, вершины с нуля
    rotation     <- необязательный блок
    a b c        <- n строк: циклический порядок соседей вершины i
"""

import logging
import os
from typing import List, Optional, Tuple, Union

from services.graph import EmbeddingError, Graph, GraphError, PlaneGraph

logger = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Файл графа не соответствует формату."""


def _ints(line: str, lineno: int) -> List[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GraphFormatError(f"строка {lineno}: ожидались целые числа, получено {line!r}") from None


def parse_graph_text(text: str) -> Tuple[Graph, Optional[PlaneGraph]]:
    """Разбирает текст; возвращает граф и укладку (если есть блок rotation)."""
    raw = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    raw = [(i, ln) for i, ln in raw if not ln.startswith("#")]
    lines = [(i, ln) for i, ln in raw if ln]
    if not lines:
        raise GraphFormatError("пустой файл графа")

    lineno, header = lines[0]
    head = _ints(header, lineno)
    if len(head) != 2 or head[0] < 0 or head[1] < 0:
        raise GraphFormatError(f"строка {lineno}: заголовок должен быть 'n m'")
    n, m = head
    if len(lines) < 1 + m:
        raise GraphFormatError(f"ожидалось {m} рёбер, найдено {len(lines) - 1}")

    edges = []
    seen = set()
    for lineno, line in lines[1:1 + m]:
        pair = _ints(line, lineno)
        if len(pair) != 2:
            raise GraphFormatError(f"строка {lineno}: ребро должно быть 'u v'")
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"строка {lineno}: вершина вне диапазона 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"строка {lineno}: петля в вершине {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"строка {lineno}: повторное ребро {key}")
        seen.add(key)
        edges.append(key)

    try:
        graph = Graph.from_edges(n, edges)
    except GraphError as e:
        raise GraphFormatError(str(e)) from e

    rest = lines[1 + m:]
    if not rest:
        return graph, None

    lineno, marker = rest[0]
    if marker.lower() != "rotation":
        raise GraphFormatError(f"строка {lineno}: лишние данные после рёбер: {marker!r}")
    # пустая строка в блоке rotation — изолированная вершина, поэтому строки считаются по позиции
    start = next(k for k, (i, _) in enumerate(raw) if i == lineno) + 1
    rows = raw[start:]
    while len(rows) > n and not rows[-1][1]:
        rows.pop()
    if len(rows) != n:
        raise GraphFormatError(f"блок rotation должен содержать {n} строк, найдено {len(rows)}")
    rotation = []
    for lineno, line in rows:
        order = _ints(line, lineno)
        if any(not (0 <= w < n) for w in order):
            raise GraphFormatError(f"строка {lineno}: вершина вне диапазона 0..{n - 1}")
        rotation.append(tuple(order))
    try:
        plane = PlaneGraph(graph, tuple(rotation))
    except EmbeddingError as e:
        raise GraphFormatError(str(e)) from e
    return graph, plane


def read_graph_file(path: Union[str, os.PathLike]) -> Tuple[Graph, Optional[PlaneGraph]]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise GraphFormatError(f"не удалось прочитать {path}: {e}") from e
    graph, plane = parse_graph_text(text)
    logger.debug("Прочитан граф %s: n=%d, m=%d", path, graph.n, graph.m)
    return graph, plane


def format_graph_text(graph: Graph, plane: Optional[PlaneGraph] = None) -> str:
    out = [f"{graph.n} {graph.m}"]
    out.extend(f"{u} {v}" for u, v in graph.sorted_edges())
    if plane is not None:
        out.append("rotation")
        out.extend(" ".join(str(w) for w in order) for order in plane.rotation)
    return "\n".join(out) + "\n"
