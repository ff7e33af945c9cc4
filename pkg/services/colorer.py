# services/colorer.py

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from config import PARTITION_TARGET, SAMPLE_PALETTE_WEIGHTS
from services import catalog
from services.assignments import (
    ListAssignment,
    ListsRelation,
    Masks,
    SizeProfile,
    canonical_prefixes,
    iter_canonical_masks,
    random_assignment,
)
from services.generators import path_graph
from services.graph import Graph, square
from services.runner import run_partitions
from utils.report import Verdict
from utils.utils import Stopwatch, chunked

logger = logging.getLogger(__name__)

Coloring = Dict[int, int]


# --------- Решатель ---------

def _search(adj: Sequence[int], domains: List[int], colors: List[int], unassigned: int) -> bool:
    """
    Перебор с возвратом: вершина с наименьшим числом оставшихся цветов (при равенстве —
    с меньшим номером), цвета по возрастанию, прямая проверка соседей.
    """
    if not unassigned:
        return True
    best = -1
    best_size = 1 << 30
    m = unassigned
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        size = domains[v].bit_count()
        if size < best_size:
            best, best_size = v, size
            if size == 0:
                return False
    v = best
    rest = unassigned & ~(1 << v)
    nbrs = adj[v] & rest
    dom = domains[v]
    while dom:
        bit = dom & -dom
        dom ^= bit
        saved = []
        ok = True
        m = nbrs
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            du = domains[u]
            if du & bit:
                saved.append((u, du))
                du &= ~bit
                domains[u] = du
                if not du:
                    ok = False
                    break
        if ok:
            colors[v] = bit.bit_length() - 1
            if _search(adj, domains, colors, rest):
                return True
        for u, du in saved:
            domains[u] = du
    colors[v] = -1
    return False


def solve_masks(adj: Sequence[int], masks: Sequence[int]) -> Optional[List[int]]:
    """Раскраска по маскам смежности и маскам списков; None, если её нет."""
    n = len(masks)
    if not all(masks):
        return None
    domains = list(masks)
    colors = [-1] * n
    if _search(adj, domains, colors, (1 << n) - 1):
        return colors
    return None


def find_coloring(g: Graph, L: ListAssignment) -> Optional[Coloring]:
    """Правильная L-раскраска g или None (полный перебор)."""
    if len(L) != g.n:
        raise ValueError(f"назначение задано для {len(L)} вершин, а в графе их {g.n}")
    colors = solve_masks(g.adjacency_masks, L.masks())
    if colors is None:
        return None
    return dict(enumerate(colors))


def is_proper_coloring(g: Graph, L: ListAssignment, coloring: Mapping[int, int]) -> bool:
    if set(coloring) != set(range(g.n)):
        return False
    if any(coloring[v] not in L[v] for v in range(g.n)):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges)


def hall_extend(X: Sequence[int], L: Mapping[int, Any]) -> Optional[Coloring]:
    """
    Система различных представителей c_v ∈ L(v) для вершин X (вершины X попарно
    конфликтуют) через паросочетание во вспомогательном двудольном графе.
    """
    X = list(X)
    if not X:
        return {}
    aux = nx.Graph()
    top = [("v", x) for x in X]
    aux.add_nodes_from(top, bipartite=0)
    for x in X:
        for c in sorted(L[x]):
            aux.add_node(("c", c), bipartite=1)
            aux.add_edge(("v", x), ("c", c))
    matching = nx.bipartite.hopcroft_karp_matching(aux, top_nodes=top)
    if any(node not in matching for node in top):
        return None
    return {x: matching[("v", x)][1] for x in X}


# --------- Потоковая проверка ---------

@dataclass(frozen=True)
class StreamTask:
    adjacency: Tuple[int, ...]
    sizes: Tuple[int, ...]
    prefix: Masks
    predicate: Optional[Callable[[Masks], bool]] = None


def check_stream_partition(task: StreamTask) -> Tuple[int, Optional[Masks]]:
    """(сколько проверено, первое нераскрашиваемое назначение или None) для одной части потока."""
    checked = 0
    adj = task.adjacency
    predicate = task.predicate
    for masks in iter_canonical_masks(task.sizes, task.prefix):
        if predicate is not None and not predicate(masks):
            continue
        checked += 1
        if solve_masks(adj, masks) is None:
            return checked, masks
    return checked, None


@dataclass(frozen=True)
class SampleTask:
    adjacency: Tuple[int, ...]
    sizes: Tuple[int, ...]
    draws: Tuple[Tuple[int, int], ...]  # (seed, palette)


def check_sample_partition(task: SampleTask) -> Tuple[int, Optional[Masks]]:
    profile = SizeProfile(task.sizes)
    checked = 0
    for s, palette in task.draws:
        masks = random_assignment(profile, palette, s).masks()
        checked += 1
        if solve_masks(task.adjacency, masks) is None:
            return checked, masks
    return checked, None


@dataclass
class StreamOutcome:
    checked: int
    witness: Optional[Masks]
    partitions: int
    wall_time_ms: int


def exhaust(
    g: Graph,
    sizes: Sequence[int],
    predicate: Optional[Callable[[Masks], bool]] = None,
    jobs: int = 1,
    label: str = "",
) -> StreamOutcome:
    """
    Проверяет раскрашиваемость g для каждого канонического назначения с размерами
    sizes (вершины в порядке 0..n-1). Каждая часть останавливается на своём первом
    провале; итоговый свидетель — первый по порядку потока.
    """
    if len(sizes) != g.n:
        raise ValueError(f"профиль на {len(sizes)} вершин, а в графе их {g.n}")
    with Stopwatch() as sw:
        prefixes = canonical_prefixes(sizes, PARTITION_TARGET)
        tasks = [
            StreamTask(g.adjacency_masks, tuple(sizes), prefix, predicate) for prefix in prefixes
        ]
        results = run_partitions(check_stream_partition, tasks, jobs, label=label)
    witness = next((w for _, w in results if w is not None), None)
    return StreamOutcome(
        checked=sum(c for c, _ in results),
        witness=witness,
        partitions=len(tasks),
        wall_time_ms=sw.ms,
    )


def sample(
    g: Graph,
    sizes: Sequence[int],
    n: int,
    seed: int,
    palette: Optional[int] = None,
    jobs: int = 1,
    label: str = "",
) -> StreamOutcome:
    """
    n случайных назначений; сид и палитра каждого выводятся из seed.
    Без явной palette палитра выборки — max(sizes) + k, k по весам SAMPLE_PALETTE_WEIGHTS.
    """
    if len(sizes) != g.n:
        raise ValueError(f"профиль на {len(sizes)} вершин, а в графе их {g.n}")
    rng = random.Random(seed)
    base = max(sizes, default=0)
    extra = range(len(SAMPLE_PALETTE_WEIGHTS))
    draws = []
    for _ in range(n):
        s = rng.getrandbits(64)
        p = palette if palette is not None else base + rng.choices(extra, SAMPLE_PALETTE_WEIGHTS)[0]
        draws.append((s, p))
    with Stopwatch() as sw:
        tasks = [
            SampleTask(g.adjacency_masks, tuple(sizes), tuple(chunk))
            for chunk in chunked(draws, PARTITION_TARGET)
            if chunk
        ]
        results = run_partitions(check_sample_partition, tasks, jobs, label=label)
    witness = next((w for _, w in results if w is not None), None)
    return StreamOutcome(
        checked=sum(c for c, _ in results),
        witness=witness,
        partitions=len(tasks),
        wall_time_ms=sw.ms,
    )


# --------- Леммы ---------

@dataclass
class LemmaReport:
    lemma: str
    profile: Tuple[int, ...]
    assignments_checked: int
    result: Verdict
    counterexample: Optional[Dict[str, List[int]]] = None
    wall_time_ms: int = 0
    filter: Optional[str] = None
    partitions: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "lemma": self.lemma,
            "profile": list(self.profile),
            "assignments_checked": self.assignments_checked,
            "result": self.result.value,
            "wall_time_ms": self.wall_time_ms,
            "partitions": self.partitions,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.filter:
            out["filter"] = self.filter
        out.update(self.extra)
        return out


P4_PROFILE = (2, 3, 2, 2)
J1_PROFILE = (2, 3, 4, 3, 3)
J2_PROFILES = {1: (2, 4, 4, 3, 2, 2), 2: (3, 4, 4, 3, 2, 2)}
# L(v1) != L(v5): позиции v1 и v5 в порядке нумерации
J2_DISTINCT = ListsRelation(0, 4, equal=False)
J2_EQUAL = ListsRelation(0, 4, equal=True)


def _lemma_graph(name: str) -> Tuple[Graph, Tuple[str, ...]]:
    if name == "p4":
        return square(path_graph(4)), ("v1", "v2", "v3", "v4")
    c = catalog.get(name)
    return square(c.graph), c.labels


def _run_lemma(
    lemma: str,
    graph_name: str,
    profile: Sequence[int],
    predicate: Optional[ListsRelation] = None,
    jobs: int = 1,
) -> LemmaReport:
    g, labels = _lemma_graph(graph_name)
    profile = SizeProfile(tuple(profile)).sizes
    logger.info("Лемма %s: профиль %s%s", lemma, profile, f", фильтр {predicate.describe(labels)}" if predicate else "")
    outcome = exhaust(g, profile, predicate, jobs=jobs, label=lemma)
    witness = None
    if outcome.witness is not None:
        witness = ListAssignment.from_masks(outcome.witness).to_json(labels)
        logger.warning("Лемма %s: найдено нераскрашиваемое назначение %s", lemma, witness)
    return LemmaReport(
        lemma=lemma,
        profile=profile,
        assignments_checked=outcome.checked,
        result=Verdict.FAIL if witness else Verdict.PASS,
        counterexample=witness,
        wall_time_ms=outcome.wall_time_ms,
        filter=predicate.describe(labels) if predicate else None,
        partitions=outcome.partitions,
    )


def verify_lemma_p4(profile: Optional[Sequence[int]] = None, jobs: int = 1) -> LemmaReport:
    return _run_lemma("p4", "p4", profile or P4_PROFILE, jobs=jobs)


def verify_lemma_j1(profile: Optional[Sequence[int]] = None, jobs: int = 1) -> LemmaReport:
    return _run_lemma("j1", "J1", profile or J1_PROFILE, jobs=jobs)


def verify_lemma_j2(condition: int, profile: Optional[Sequence[int]] = None, jobs: int = 1) -> LemmaReport:
    if condition not in J2_PROFILES:
        raise ValueError(f"условие леммы J2 должно быть 1 или 2, получено {condition!r}")
    predicate = J2_DISTINCT if condition == 1 else None
    return _run_lemma(f"j2-{condition}", "J2", profile or J2_PROFILES[condition], predicate, jobs)


def verify_lemma_j2_necessity(jobs: int = 1) -> LemmaReport:
    """
    Условие (1) с обращённым фильтром L(v1) = L(v5). Утверждение "раскрашиваемо всегда"
    здесь должно ломаться: FAIL с первым нераскрашиваемым назначением в каноническом
    порядке показывает, что гипотеза L(v1) != L(v5) необходима.
    """
    report = _run_lemma("j2-necessity", "J2", J2_PROFILES[1], J2_EQUAL, jobs)
    report.extra["claim"] = "при L(v1) = L(v5) существует нераскрашиваемое назначение"
    return report

