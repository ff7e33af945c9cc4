# services/catalog.py

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from services.graph import Graph, GraphError, has_cycle_length_in, is_subcubic, square
from utils.report import Verdict

logger = logging.getLogger(__name__)

# Размер списков в минимальном контрпримере
LIST_SIZE = 6

FAMILIES = ("D", "T", "J", "H", "F")
MODES = ("exhaustive", "sample", "nullstellensatz")
# figure — профиль с рисунка, text — из подсчёта запрещённых цветов (оба сверяются
# с вычисленным остатком), lemma — из формулировки леммы (не сверяется)
PROFILE_SOURCES = ("figure", "text", "lemma")


class CatalogError(ValueError):
    """Некорректная запись каталога или файл каталога."""


# --------- Конфигурация ---------

@dataclass(frozen=True)
class Configuration:
    """
    Запись каталога. Вершины пронумерованы 0..n-1, labels[i] — имя вершины (v1, v11, …).
    half_edges[i] — число рёбер, уходящих из конфигурации; recolored — перекрашиваемые
    вершины в порядке нумерации; figure_profile и target_monomial выровнены по recolored.
    """

    name: str
    family: str
    labels: Tuple[str, ...]
    graph: Graph
    half_edges: Tuple[int, ...]
    recolored: Tuple[int, ...]
    figure_profile: Tuple[int, ...]
    target_monomial: Optional[Tuple[int, ...]] = None
    expected_coefficient: Optional[int] = None
    cycle: Tuple[int, ...] = ()
    cyclic: bool = False
    profile_source: str = "figure"
    default_mode: str = "sample"
    note: str = ""

    def __post_init__(self) -> None:
        n = self.graph.n
        if self.family not in FAMILIES:
            raise CatalogError(f"{self.name}: неизвестное семейство {self.family!r}")
        if len(self.labels) != n or len(self.half_edges) != n:
            raise CatalogError(f"{self.name}: labels/half_edges не согласованы с числом вершин {n}")
        for v in range(n):
            if self.half_edges[v] < 0:
                raise CatalogError(f"{self.name}: отрицательное число полурёбер у {self.labels[v]}")
            if self.graph.degree(v) + self.half_edges[v] > 3:
                raise CatalogError(
                    f"{self.name}: вершина {self.labels[v]} имеет степень "
                    f"{self.graph.degree(v) + self.half_edges[v]} > 3"
                )
        if len(set(self.recolored)) != len(self.recolored) or any(
            not 0 <= v < n for v in self.recolored
        ):
            raise CatalogError(f"{self.name}: recolored должно быть подмножеством вершин")
        if len(self.figure_profile) != len(self.recolored):
            raise CatalogError(f"{self.name}: figure_profile не выровнен по recolored")
        if any(not 1 <= s <= LIST_SIZE for s in self.figure_profile):
            raise CatalogError(f"{self.name}: размеры figure_profile должны лежать в 1..{LIST_SIZE}")
        if self.target_monomial is not None and len(self.target_monomial) != len(self.recolored):
            raise CatalogError(f"{self.name}: target_monomial не выровнен по recolored")
        if self.default_mode not in MODES:
            raise CatalogError(f"{self.name}: неизвестный режим {self.default_mode!r}")
        if self.default_mode == "nullstellensatz" and self.target_monomial is None:
            raise CatalogError(f"{self.name}: режим nullstellensatz требует target_monomial")
        if self.profile_source not in PROFILE_SOURCES:
            raise CatalogError(f"{self.name}: profile_source должен быть одним из {PROFILE_SOURCES}")

    def label(self, v: int) -> str:
        return self.labels[v]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise CatalogError(f"{self.name}: нет вершины {label!r}") from None

    @property
    def recolored_labels(self) -> Tuple[str, ...]:
        return tuple(self.labels[v] for v in self.recolored)

    def degree(self, v: int) -> int:
        """Степень в объемлющем графе: внутренние рёбра плюс полурёбра."""
        return self.graph.degree(v) + self.half_edges[v]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "family": self.family,
            "vertices": list(self.labels),
            "edges": [[self.labels[u], self.labels[v]] for u, v in self.graph.sorted_edges()],
            "half_edges": {self.labels[v]: k for v, k in enumerate(self.half_edges) if k},
            "recolored": list(self.recolored_labels),
            "figure_profile": {
                self.labels[v]: s for v, s in zip(self.recolored, self.figure_profile)
            },
            "target_monomial": list(self.target_monomial) if self.target_monomial else None,
            "expected_coefficient": self.expected_coefficient,
            "cycle": [self.labels[v] for v in self.cycle],
            "cyclic": self.cyclic,
            "profile_source": self.profile_source,
            "default_mode": self.default_mode,
            "note": self.note,
        }


def configuration_from_dict(data: Mapping[str, Any]) -> Configuration:
    """Запись каталога из словаря (встроенная таблица и JSON-файл имеют одну схему)."""
    try:
        name = str(data["name"])
        labels = tuple(str(x) for x in data["vertices"])
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise CatalogError(f"{name}: повторяющиеся имена вершин")

        def _idx(label: str) -> int:
            if label not in index:
                raise CatalogError(f"{name}: неизвестная вершина {label!r}")
            return index[label]

        graph = Graph.from_edges(len(labels), [(_idx(a), _idx(b)) for a, b in data["edges"]])
        half = [0] * len(labels)
        for label, count in dict(data.get("half_edges") or {}).items():
            half[_idx(label)] = int(count)
        recolored = tuple(_idx(x) for x in data["recolored"])
        profile_map = dict(data["figure_profile"])
        missing = [x for x in data["recolored"] if x not in profile_map]
        if missing:
            raise CatalogError(f"{name}: нет размера списка для {missing}")
        target = data.get("target_monomial")
        return Configuration(
            name=name,
            family=str(data["family"]),
            labels=labels,
            graph=graph,
            half_edges=tuple(half),
            recolored=recolored,
            figure_profile=tuple(int(profile_map[x]) for x in data["recolored"]),
            target_monomial=tuple(int(t) for t in target) if target is not None else None,
            expected_coefficient=data.get("expected_coefficient"),
            cycle=tuple(_idx(x) for x in data.get("cycle") or ()),
            cyclic=bool(data.get("cyclic", False)),
            profile_source=str(data.get("profile_source", "figure")),
            default_mode=str(data.get("default_mode", "sample")),
            note=str(data.get("note", "")),
        )
    except CatalogError:
        raise
    except GraphError as e:
        raise CatalogError(f"{data.get('name', '?')}: {e}") from e
    except (KeyError, TypeError, ValueError) as e:
        raise CatalogError(f"{data.get('name', '?')}: некорректная запись каталога ({e!r})") from e


# --------- Таблица каталога ---------

def _names(n: int) -> List[str]:
    return [f"v{i}" for i in range(1, n + 1)]


def _path(*labels: str) -> List[Tuple[str, str]]:
    return list(zip(labels, labels[1:]))


def _ring(k: int) -> List[Tuple[str, str]]:
    return [(f"v{i}", f"v{i % k + 1}") for i in range(1, k + 1)]


def _apexes(pairs: Mapping[str, Tuple[str, str]]) -> List[Tuple[str, str]]:
    out = []
    for apex, (a, b) in pairs.items():
        out += [(apex, a), (apex, b)]
    return out


def _seq(sizes: Sequence[int]) -> Dict[str, int]:
    return {f"v{i}": s for i, s in enumerate(sizes, 1)}


def _by_size(groups: Mapping[int, Iterable[int]]) -> Dict[str, int]:
    out = {}
    for size, idx in groups.items():
        for i in idx:
            out[f"v{i}"] = size
    return dict(sorted(out.items(), key=lambda kv: int(kv[0][1:])))


def _ones(*labels: str) -> Dict[str, int]:
    return {lab: 1 for lab in labels}


def _h(name: str, apexes: Mapping[str, Tuple[str, str]], pendants: Sequence[str], profile: Sequence[int]) -> Dict[str, Any]:
    n = 10 + len(apexes)
    return {
        "name": name,
        "family": "H",
        "vertices": _names(n),
        "edges": _ring(10) + _apexes(apexes),
        "half_edges": _ones(*pendants, *apexes),
        "recolored": _names(n),
        "figure_profile": _seq(profile),
        "cycle": _names(10),
        "cyclic": True,
        "default_mode": "sample",
    }


def _f(
    name: str,
    apexes: Mapping[str, Tuple[str, str]],
    pendants: Sequence[str],
    profile: Mapping[int, Iterable[int]],
    target: Optional[Sequence[int]] = None,
    coefficient: Optional[int] = None,
) -> Dict[str, Any]:
    n = 9 + len(apexes)
    return {
        "name": name,
        "family": "F",
        "vertices": _names(n),
        "edges": _ring(9) + _apexes(apexes),
        "half_edges": _ones(*pendants, *apexes),
        "recolored": _names(n),
        "figure_profile": _by_size(profile),
        "target_monomial": list(target) if target else None,
        "expected_coefficient": coefficient,
        "cycle": _names(9),
        "cyclic": True,
        "default_mode": "nullstellensatz" if target else "sample",
    }


CATALOG_TABLE: List[Dict[str, Any]] = [
    # D1–D3: вершина степени 1, 2-вершина в треугольнике, две соседние 2-вершины
    {
        "name": "D1",
        "family": "D",
        "vertices": _names(2),
        "edges": [("v1", "v2")],
        "half_edges": {"v2": 2},
        "recolored": ["v1"],
        "figure_profile": {"v1": 3},
        "profile_source": "text",
        "default_mode": "exhaustive",
        "note": "в квадрате у v1 не больше трёх соседей",
    },
    {
        "name": "D2",
        "family": "D",
        "vertices": _names(3),
        "edges": _ring(3),
        "half_edges": _ones("v2", "v3"),
        "recolored": ["v1"],
        "figure_profile": {"v1": 2},
        "profile_source": "text",
        "default_mode": "exhaustive",
        "note": "у v1 запрещено не больше четырёх цветов",
    },
    {
        "name": "D3",
        "family": "D",
        "vertices": _names(4),
        "edges": _path("v1", "v2", "v3", "v4"),
        "half_edges": {"v1": 2, "v4": 2},
        "recolored": ["v2", "v3"],
        "figure_profile": {"v2": 2, "v3": 2},
        "profile_source": "text",
        "default_mode": "exhaustive",
        "note": "L'(v2), L'(v3) размера не меньше 2",
    },
    # T1–T3 (путь вдоль грани + треугольники)
    {
        "name": "T1",
        "family": "T",
        "vertices": _names(5),
        "edges": _path("v1", "v2", "v3", "v4") + [("v2", "v5"), ("v3", "v5")],
        "half_edges": _ones("v1", "v4", "v5"),
        "recolored": _names(5),
        "figure_profile": _seq((3, 4, 4, 3, 3)),
        "cycle": ["v1", "v2", "v3", "v4"],
        "default_mode": "exhaustive",
        "note": "v5 нарисована 3-вершиной с двумя видимыми рёбрами; третье считаем полуребром",
    },
    {
        "name": "T2",
        "family": "T",
        "vertices": _names(7),
        "edges": _path("v1", "v2", "v3", "v4", "v5") + _apexes({"v6": ("v1", "v2"), "v7": ("v3", "v4")}),
        "half_edges": _ones("v1", "v5", "v6", "v7"),
        "recolored": ["v2", "v3", "v4", "v5", "v7"],
        "figure_profile": {"v2": 2, "v3": 3, "v4": 4, "v5": 3, "v7": 3},
        "cycle": ["v1", "v2", "v3", "v4", "v5"],
        "default_mode": "exhaustive",
    },
    {
        "name": "T3",
        "family": "T",
        "vertices": _names(6),
        "edges": _path("v1", "v2", "v3", "v4", "v5") + _apexes({"v6": ("v1", "v2")}),
        "half_edges": _ones("v1", "v4", "v5", "v6"),
        "recolored": ["v2", "v3", "v4", "v5"],
        "figure_profile": {"v2": 2, "v3": 3, "v4": 2, "v5": 2},
        "cycle": ["v1", "v2", "v3", "v4", "v5"],
        "default_mode": "exhaustive",
    },
    # J1, J2 (размеры списков из формулировок лемм)
    {
        "name": "J1",
        "family": "J",
        "vertices": _names(5),
        "edges": _path("v1", "v2", "v3", "v4") + [("v2", "v5"), ("v3", "v5")],
        "recolored": _names(5),
        "figure_profile": _seq((2, 3, 4, 3, 3)),
        "profile_source": "lemma",
        "default_mode": "exhaustive",
    },
    {
        "name": "J2",
        "family": "J",
        "vertices": _names(6),
        "edges": _path("v1", "v2", "v3", "v4") + [("v1", "v5"), ("v2", "v5"), ("v3", "v6"), ("v4", "v6")],
        "recolored": _names(6),
        "figure_profile": _seq((3, 4, 4, 3, 2, 2)),
        "profile_source": "lemma",
        "default_mode": "exhaustive",
        "note": "условие (2) леммы; условие (1) проверяется отдельно с фильтром L(v1) != L(v5)",
    },
    # 10-циклы H1–H4
    _h(
        "H1",
        {"v11": ("v1", "v2"), "v12": ("v3", "v4"), "v13": ("v5", "v6"), "v14": ("v7", "v8"), "v15": ("v9", "v10")},
        [],
        (5,) * 10 + (3,) * 5,
    ),
    _h(
        "H2",
        {"v11": ("v1", "v2"), "v12": ("v4", "v5"), "v13": ("v7", "v8")},
        ["v6", "v10"],
        (4, 5, 6, 5, 4, 3, 4, 5, 5, 3, 3, 3, 3),
    ),
    _h(
        "H3",
        {"v11": ("v1", "v2"), "v12": ("v4", "v5")},
        ["v6", "v8", "v10"],
        (4, 5, 6, 5, 4, 3, 4, 3, 4, 3, 3, 3),
    ),
    _h(
        "H4",
        {},
        ["v2", "v4", "v6", "v8", "v10"],
        (4, 3, 4, 3, 4, 3, 4, 3, 4, 3),
    ),
    # 9-циклы F1–F12
    _f("F1", {}, ["v1", "v3", "v5", "v7", "v8"], {2: (7, 8), 3: (1, 3, 5), 4: (2, 4, 6, 9)}),
    _f(
        "F2",
        {"v10": ("v6", "v7")},
        ["v1", "v3", "v5", "v8"],
        {3: (1, 3, 5, 8, 10), 4: (2, 4, 6, 7, 9)},
        target=(2, 3, 2, 3, 2, 3, 2, 2, 2, 1),
        coefficient=2,
    ),
    _f(
        "F3",
        {"v10": ("v6", "v7")},
        ["v1", "v3", "v4", "v8"],
        {2: (3, 4), 3: (1, 8, 10), 4: (2, 7, 9), 5: (5, 6)},
        target=(2, 2, 1, 1, 4, 4, 2, 2, 2, 2),
        coefficient=1,
    ),
    _f(
        "F4",
        {"v10": ("v1", "v2"), "v11": ("v5", "v6")},
        ["v4", "v7", "v9"],
        {3: (4, 7, 9, 10, 11), 4: (1, 5, 6, 8), 5: (2, 3)},
    ),
    _f(
        "F5",
        {"v10": ("v1", "v2"), "v11": ("v3", "v4")},
        ["v5", "v7", "v9"],
        {3: (5, 7, 9, 10, 11), 4: (1, 4, 6, 8), 5: (2, 3)},
        target=(3, 4, 4, 3, 1, 3, 2, 3, 1, 1, 1),
        coefficient=-2,
    ),
    _f(
        "F6",
        {"v10": ("v1", "v2"), "v11": ("v6", "v7")},
        ["v4", "v5", "v9"],
        {2: (4, 5), 3: (9, 10, 11), 4: (1, 6), 5: (2, 3, 7, 8)},
    ),
    _f(
        "F7",
        {"v10": ("v1", "v2"), "v11": ("v7", "v8")},
        ["v4", "v5", "v9"],
        {2: (4, 5), 3: (9, 10, 11), 4: (1, 8), 5: (2, 3, 6, 7)},
    ),
    _f(
        "F8",
        {"v10": ("v1", "v2"), "v11": ("v4", "v5")},
        ["v6", "v7", "v9"],
        {2: (6, 7), 3: (9, 10, 11), 4: (1, 5, 8), 5: (2, 4), 6: (3,)},
    ),
    _f(
        "F9",
        {"v10": ("v1", "v2"), "v11": ("v4", "v5"), "v12": ("v7", "v8")},
        ["v6", "v9"],
        {3: (6, 9, 10, 11, 12), 4: (1, 5, 7, 8), 5: (2, 4), 6: (3,)},
        target=(3, 4, 3, 4, 3, 2, 3, 3, 2, 1, 1, 1),
        coefficient=4,
    ),
    _f(
        "F10",
        {"v10": ("v1", "v2"), "v11": ("v3", "v4"), "v12": ("v6", "v7")},
        ["v5", "v9"],
        {3: (5, 9, 10, 11, 12), 4: (1, 4, 6), 5: (2, 3, 7, 8)},
        target=(3, 4, 3, 3, 2, 3, 3, 4, 1, 1, 2, 1),
        coefficient=2,
    ),
    _f(
        "F11",
        {"v10": ("v1", "v2"), "v11": ("v3", "v4"), "v12": ("v5", "v6")},
        ["v7", "v9"],
        {3: (7, 9, 10, 11, 12), 4: (1, 6, 8), 5: (2, 3, 4, 5)},
    ),
    _f(
        "F12",
        {"v10": ("v1", "v2"), "v11": ("v3", "v4"), "v12": ("v5", "v6"), "v13": ("v7", "v8")},
        ["v9"],
        {3: (9, 10, 11, 12, 13), 4: (1, 8), 5: (2, 3, 4, 5, 6, 7)},
        target=(3, 3, 4, 4, 3, 3, 4, 3, 1, 1, 1, 2, 2),
        coefficient=-1,
    ),
]

# Шаблоны сегментов S1–S5 как последовательности токенов между
# соседними вершинами A(C): W — 2-вершина, T — пара вершин треугольника.
SEGMENT_TEMPLATES: Dict[str, Tuple[Tuple[str, ...], ...]] = {
    "S1": (("W",),),
    "S2": (("W", "T"), ("T", "W")),
    "S3": (("T", "W", "T"),),
    "S5": ((),),
}
# S4 = T^l, l ≥ 1 (возможно z_i = z_{i+1})
REPEATED_SEGMENT = ("S4", "T")


def build_catalog(table: Iterable[Mapping[str, Any]]) -> Tuple[Configuration, ...]:
    entries = tuple(configuration_from_dict(row) for row in table)
    names = [c.name for c in entries]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise CatalogError(f"повторяющиеся имена в каталоге: {duplicates}")
    return entries


CATALOG: Tuple[Configuration, ...] = build_catalog(CATALOG_TABLE)


def get(name: str, catalog: Optional[Sequence[Configuration]] = None) -> Configuration:
    for c in catalog if catalog is not None else CATALOG:
        if c.name.lower() == name.lower():
            return c
    raise CatalogError(f"нет конфигурации {name!r} в каталоге")


def by_family(family: str, catalog: Optional[Sequence[Configuration]] = None) -> List[Configuration]:
    return [c for c in (catalog if catalog is not None else CATALOG) if c.family == family]


# --------- Окрестность и остаточные профили ---------

def augment(c: Configuration) -> Graph:
    """
    Каждое полуребро заменяется свежей внешней вершиной с двумя свежими листьями
    (худший случай: все внешние вершины различны и имеют полную степень).
    """
    edges = set(c.graph.edges)
    n = c.graph.n
    for v in range(c.graph.n):
        for _ in range(c.half_edges[v]):
            outside, leaf_a, leaf_b = n, n + 1, n + 2
            edges |= {(v, outside), (outside, leaf_a), (outside, leaf_b)}
            n += 3
    return Graph(n, frozenset(edges))


def residual_profile(c: Configuration) -> Tuple[int, ...]:
    """6 минус число соседей в квадрате окрестности вне recolored; не меньше 0."""
    sq = square(augment(c))
    inside = set(c.recolored)
    out = []
    for v in c.recolored:
        foreign = sum(1 for u in sq.neighbors(v) if u not in inside)
        out.append(max(0, LIST_SIZE - foreign))
    return tuple(out)


def colorability_graph(c: Configuration) -> Graph:
    """Квадрат окрестности, индуцированный на recolored (вершина i — recolored[i])."""
    return square(augment(c)).induced(c.recolored)


def structural_problems(c: Configuration) -> List[str]:
    problems = []
    if not is_subcubic(c.graph):
        problems.append("граф не субкубический")
    if has_cycle_length_in(augment(c), 4, 8):
        problems.append("после дополнения есть цикл длины 4..8")
    return problems


# --------- Сверка записанных профилей ---------

@dataclass
class ProfileCheckReport:
    verdict: Verdict
    checked: List[str] = field(default_factory=list)
    skipped: List[Dict[str, str]] = field(default_factory=list)
    mismatches: List[Dict[str, Any]] = field(default_factory=list)
    structure: List[Dict[str, str]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "result": self.verdict.value,
            "checked": self.checked,
            "skipped": self.skipped,
            "mismatches": self.mismatches,
            "structure": self.structure,
        }


def check_figure_profiles(catalog: Optional[Sequence[Configuration]] = None) -> ProfileCheckReport:
    """
    PASS, если вычисленный остаточный профиль совпадает с записанным figure_profile
    для каждой записи; записи с профилем из формулировки леммы пропускаются.
    """
    entries = CATALOG if catalog is None else catalog
    report = ProfileCheckReport(verdict=Verdict.PASS)
    for c in entries:
        for problem in structural_problems(c):
            report.structure.append({"config": c.name, "problem": problem})
        if c.profile_source == "lemma":
            report.skipped.append({"config": c.name, "reason": "профиль задан формулировкой леммы"})
            logger.info("%s: профиль из леммы, сверка пропущена", c.name)
            continue
        derived = residual_profile(c)
        for v, want, got in zip(c.recolored, c.figure_profile, derived):
            if want != got:
                report.mismatches.append(
                    {"config": c.name, "vertex": c.label(v), "figure": want, "derived": got}
                )
        report.checked.append(c.name)
    if report.mismatches or report.structure:
        report.verdict = Verdict.FAIL
        logger.warning(
            "Сверка профилей: %d расхождений, %d структурных нарушений",
            len(report.mismatches), len(report.structure),
        )
    return report


# --------- Проекция на структуру цикла ---------

def segment_templates() -> Dict[str, List[List[str]]]:
    """S1–S5 как шаблоны токенов между соседними вершинами A(C); S4 — T^l."""
    out = {kind: [list(t) for t in shapes] for kind, shapes in SEGMENT_TEMPLATES.items()}
    kind, token = REPEATED_SEGMENT
    out[kind] = [[token, "..."]]
    return dict(sorted(out.items()))


def _shares_apex(c: Configuration, u: int, v: int) -> bool:
    on_cycle = set(c.cycle)
    return any(w not in on_cycle for w in c.graph.neighbors(u) & c.graph.neighbors(v))


def cycle_tokens(c: Configuration) -> Tuple[str, ...]:
    """
    Путь (или цикл) c.cycle в виде токенов: W — вершина степени 2, T — две соседние
    вершины с общей вершиной треугольника вне цикла, A — остальные 3-вершины.
    """
    if not c.cycle:
        raise CatalogError(f"{c.name}: у конфигурации не задан цикл")
    cycle = list(c.cycle)
    if c.cyclic and _shares_apex(c, cycle[-1], cycle[0]):
        # начинаем с первой вершины пары, чтобы пара не разрезалась
        cycle = cycle[-1:] + cycle[:-1]
    tokens = []
    i = 0
    while i < len(cycle):
        v = cycle[i]
        if c.degree(v) == 2:
            tokens.append("W")
        elif i + 1 < len(cycle) and _shares_apex(c, v, cycle[i + 1]):
            tokens.append("T")
            i += 1
        else:
            tokens.append("A")
        i += 1
    return tuple(tokens)


def exclusion_patterns(catalog: Optional[Sequence[Configuration]] = None) -> Dict[str, Tuple[str, ...]]:
    """Запрещённые подпоследовательности: проекции T1–T3 на граничный путь."""
    return {c.name: cycle_tokens(c) for c in by_family("T", catalog)}
