# services/generators.py

"""Фиксированные и случайные тестовые графы и укладки."""

import random
from typing import Dict, List, Sequence, Tuple

from services.graph import Graph, PlaneGraph


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_embedding(n: int) -> PlaneGraph:
    g = cycle_graph(n)
    return PlaneGraph(g, tuple(((v - 1) % n, (v + 1) % n) for v in range(n)))


def hexagonal_prism() -> PlaneGraph:
    """
    Внешний шестиугольник 0..5, внутренний 6..11, спицы i — i+6.
    Вращения взяты из геометрической укладки против часовой стрелки.
    """
    edges = []
    for i in range(6):
        edges.append((i, (i + 1) % 6))
        edges.append((6 + i, 6 + (i + 1) % 6))
        edges.append((i, 6 + i))
    g = Graph.from_edges(12, edges)
    rotation: List[Tuple[int, ...]] = []
    for i in range(6):
        rotation.append(((i + 1) % 6, 6 + i, (i - 1) % 6))
    for i in range(6):
        rotation.append((i, 6 + (i + 1) % 6, 6 + (i - 1) % 6))
    return PlaneGraph(g, tuple(rotation))


def spoked_triangle(arc: int = 8) -> PlaneGraph:
    """
    Треугольник 0,1,2 внутри цикла длины 3*arc; вершины треугольника соединены
    спицами с тремя равноотстоящими вершинами цикла. Треугольная грань граничит
    с тремя гранями длины arc + 3.
    """
    outer = 3 * arc
    base = 3
    edges = [(0, 1), (1, 2), (2, 0)]
    for k in range(outer):
        edges.append((base + k, base + (k + 1) % outer))
    spokes = {0: base, 1: base + arc, 2: base + 2 * arc}
    for t, o in spokes.items():
        edges.append((t, o))
    g = Graph.from_edges(base + outer, edges)

    rotation: List[Tuple[int, ...]] = [
        (spokes[0], 1, 2),
        (spokes[1], 2, 0),
        (spokes[2], 0, 1),
    ]
    inward = {o: t for t, o in spokes.items()}
    for k in range(outer):
        v = base + k
        nxt = base + (k + 1) % outer
        prv = base + (k - 1) % outer
        if v in inward:
            rotation.append((nxt, inward[v], prv))
        else:
            rotation.append((nxt, prv))
    return PlaneGraph(g, tuple(rotation))


def glued_triangles_face(tri_edges: Sequence[int] = (0, 2, 4, 6), d: int = 9) -> PlaneGraph:
    """
    Цикл c0..c(d-1), к рёбрам (c_i, c_i+1) для i из tri_edges приклеены треугольники
    с верхушками d, d+1, ... снаружи цикла. При четырёх треугольниках
    на 9-цикле внутренняя грань имеет t = 5 > d - 6.
    """
    edges = [(i, (i + 1) % d) for i in range(d)]
    apex_of: Dict[int, int] = {}
    for k, i in enumerate(tri_edges):
        apex = d + k
        apex_of[i] = apex
        edges.append((i, apex))
        edges.append(((i + 1) % d, apex))
    n = d + len(tri_edges)
    g = Graph.from_edges(n, edges)

    rotation: List[Tuple[int, ...]] = []
    for v in range(d):
        nxt, prv = (v + 1) % d, (v - 1) % d
        if v in apex_of:
            rotation.append((apex_of[v], nxt, prv))
        elif prv in apex_of:
            rotation.append((nxt, prv, apex_of[prv]))
        else:
            rotation.append((nxt, prv))
    for i in tri_edges:
        rotation.append((i, (i + 1) % d))
    return PlaneGraph(g, tuple(rotation))


def random_stacked_triangulation(n: int, seed: int) -> PlaneGraph:
    """
    Случайная стековая триангуляция на n ≥ 3 вершинах: начиная с треугольника,
    каждая новая вершина вставляется в случайную грань и соединяется с её тремя
    вершинами. Система вращений поддерживается по ходу вставки.
    """
    if n < 3:
        raise ValueError("триангуляции нужно хотя бы 3 вершины")
    rng = random.Random(seed)
    rotation: List[List[int]] = [[1, 2], [2, 0], [0, 1]]
    edges = [(0, 1), (1, 2), (0, 2)]
    # Грани хранятся как тройки (a, b, c) в порядке обхода: дуга (a,b), затем (b,c), затем (c,a)
    faces = [(0, 1, 2), (1, 0, 2)]
    for x in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        # В b после a идёт c; x встаёт между ними. Аналогично в c и a.
        for v, before in ((b, a), (c, b), (a, c)):
            order = rotation[v]
            order.insert(order.index(before) + 1, x)
        rotation.append([a, c, b])
        edges.extend([(a, x), (b, x), (c, x)])
        faces.extend([(a, b, x), (b, c, x), (c, a, x)])
    g = Graph.from_edges(n, edges)
    return PlaneGraph(g, tuple(tuple(r) for r in rotation))
