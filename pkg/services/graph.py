# services/graph.py

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

import networkx as nx

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Dart = Tuple[int, int]
Face = Tuple[int, ...]

INFINITY = math.inf


class GraphError(ValueError):
    """Некорректный граф: петля, кратное ребро, вершина вне диапазона."""


class EmbeddingError(ValueError):
    """Некорректная система вращений или несвязный вход."""


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


# --------- Граф ---------

@dataclass(frozen=True)
class Graph:
    """
    Простой неориентированный граф на вершинах 0..n-1.
    Неизменяем после создания; производные структуры кэшируются.
    """

    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"отрицательное число вершин: {self.n}")
        normalized = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise GraphError(f"петля в вершине {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"ребро {edge} выходит за пределы 0..{self.n - 1}")
            normalized.add(_normalize_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Строит граф из списка пар, отвергая повторы (в любом порядке концов)."""
        seen = set()
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            key = _normalize_edge(u, v)
            if key in seen:
                raise GraphError(f"повторное ребро {key}")
            seen.add(key)
        return cls(n, frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        adj: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def adjacency_masks(self) -> Tuple[int, ...]:
        """Соседи каждой вершины в виде битовой маски (для решателя)."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        # Только для чтения: объект разделяется между вызовами
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Индуцированный подграф; вершина vertices[i] получает номер i."""
        index = {v: i for i, v in enumerate(vertices)}
        sub = {
            _normalize_edge(index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        }
        return Graph(len(vertices), frozenset(sub))


# --------- Операции над графами ---------

def distance(g: Graph, u: int, v: int) -> Union[int, float]:
    """Длина кратчайшего пути (BFS), INFINITY для разных компонент."""
    if u == v:
        return 0
    lengths = nx.single_source_shortest_path_length(g.nx_graph, u)
    return lengths.get(v, INFINITY)


def square(g: Graph) -> Graph:
    """G²: те же вершины, рёбра между всеми парами на расстоянии 1 или 2."""
    edges = set()
    for u in range(g.n):
        near = nx.single_source_shortest_path_length(g.nx_graph, u, cutoff=2)
        for v, dist in near.items():
            if 1 <= dist <= 2 and u < v:
                edges.add((u, v))
    return Graph(g.n, frozenset(edges))


def has_cycle_length_in(g: Graph, lo: int, hi: int) -> bool:
    """
    Есть ли простой цикл длины из [lo, hi].
    DFS из каждой вершины s по вершинам с номером больше s; глубина ограничена hi.
    """
    lo = max(lo, 3)
    if hi < lo:
        return False
    adj = g.adjacency

    def _extend(start: int, current: int, length: int, on_path: set) -> bool:
        for w in adj[current]:
            if w == start:
                if length >= 3 and lo <= length <= hi:
                    return True
                continue
            if w < start or w in on_path or length >= hi:
                continue
            on_path.add(w)
            if _extend(start, w, length + 1, on_path):
                return True
            on_path.discard(w)
        return False

    for s in range(g.n):
        if _extend(s, s, 1, {s}):
            return True
    return False


def is_subcubic(g: Graph) -> bool:
    return all(len(a) <= 3 for a in g.adjacency)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return nx.is_connected(g.nx_graph)


# --------- Плоские укладки ---------

@dataclass(frozen=True)
class PlaneGraph:
    """
    Граф с системой вращений: rotation[v] задаёт циклический порядок соседей v.
    Для простого графа это то же, что порядок инцидентных рёбер.
    """

    graph: Graph
    rotation: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rotation = tuple(tuple(r) for r in self.rotation)
        if len(rotation) != self.graph.n:
            raise EmbeddingError(
                f"вращение задано для {len(rotation)} вершин, а в графе их {self.graph.n}"
            )
        for v, order in enumerate(rotation):
            if len(order) != len(set(order)) or set(order) != set(self.graph.adjacency[v]):
                raise EmbeddingError(
                    f"вращение в вершине {v} не является перестановкой её соседей: {list(order)}"
                )
        object.__setattr__(self, "rotation", rotation)

    @cached_property
    def successor(self) -> Dict[Dart, int]:
        """successor[(v, u)] — сосед, следующий за u в циклическом порядке вокруг v."""
        succ: Dict[Dart, int] = {}
        for v, order in enumerate(self.rotation):
            k = len(order)
            for i, u in enumerate(order):
                succ[(v, u)] = order[(i + 1) % k]
        return succ

    def face_darts(self) -> List[List[Dart]]:
        """Обходы граней как списки дуг; каждая дуга лежит ровно в одном обходе."""
        if not is_connected(self.graph):
            raise EmbeddingError("граф несвязен")
        darts = sorted(
            d for u, v in self.graph.edges for d in ((u, v), (v, u))
        )
        visited = set()
        walks: List[List[Dart]] = []
        limit = len(darts)
        for start in darts:
            if start in visited:
                continue
            walk: List[Dart] = []
            dart = start
            while True:
                if dart in visited:
                    raise EmbeddingError(f"обход грани от дуги {start} не замкнулся")
                visited.add(dart)
                walk.append(dart)
                u, v = dart
                dart = (v, self.successor[(v, u)])
                if dart == start:
                    break
                if len(walk) > limit:
                    raise EmbeddingError(f"обход грани от дуги {start} не замкнулся")
            walks.append(walk)
        return walks

    def faces(self) -> List[Face]:
        return faces(self)


def faces(pg: PlaneGraph) -> List[Face]:
    """
    Грани укладки: циклические списки вершин (хвосты дуг обхода).
    Проверяет формулу Эйлера для связного графа.
    """
    g = pg.graph
    if g.m == 0:
        if g.n != 1:
            raise EmbeddingError("граф несвязен")
        return [()]
    walks = pg.face_darts()
    result = [tuple(u for u, _ in walk) for walk in walks]
    if g.n - g.m + len(result) != 2:
        raise EmbeddingError(
            f"формула Эйлера не выполняется: V-E+F = {g.n}-{g.m}+{len(result)}; "
            "система вращений задаёт укладку не на сфере"
        )
    logger.debug("Укладка: %d вершин, %d рёбер, %d граней", g.n, g.m, len(result))
    return result
