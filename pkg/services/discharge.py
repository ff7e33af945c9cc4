# services/discharge.py

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from services.boundary import THREE_A, THREE_TRI, TWO, BoundaryError, CycleBoundary, t_of
from services.graph import Dart, EmbeddingError, PlaneGraph, faces
from utils.report import Verdict

logger = logging.getLogger(__name__)

EULER_TOTAL = Fraction(-12)
# Грани длины ≥ BIG_FACE раздают заряд по правилу (R)
BIG_FACE = 9

Element = Tuple[str, int]  # ("vertex", v) или ("face", f)


@dataclass(frozen=True)
class Transfer:
    source: int
    sink: Element
    amount: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {"from_face": self.source, "to": f"{self.sink[0]} {self.sink[1]}", "amount": str(self.amount)}


@dataclass
class ChargeLedger:
    vertex_charge: Dict[int, Fraction] = field(default_factory=dict)
    face_charge: Dict[int, Fraction] = field(default_factory=dict)
    transfers: List[Transfer] = field(default_factory=list)

    def total(self) -> Fraction:
        return sum(self.vertex_charge.values(), Fraction(0)) + sum(self.face_charge.values(), Fraction(0))

    def copy(self) -> "ChargeLedger":
        return ChargeLedger(dict(self.vertex_charge), dict(self.face_charge), list(self.transfers))

    def charge(self, element: Element) -> Fraction:
        kind, idx = element
        return self.vertex_charge[idx] if kind == "vertex" else self.face_charge[idx]

    def move(self, t: Transfer) -> None:
        """Перенос заряда с грани t.source на элемент t.sink; сумма не меняется."""
        self.face_charge[t.source] -= t.amount
        kind, idx = t.sink
        if kind == "vertex":
            self.vertex_charge[idx] += t.amount
        else:
            self.face_charge[idx] += t.amount
        self.transfers.append(t)


# --------- Укладка в удобном виде ---------

@dataclass
class FaceTable:
    walks: List[List[Dart]]
    dart_face: Dict[Dart, int]

    def length(self, f: int) -> int:
        return len(self.walks[f])

    def vertices(self, f: int) -> Tuple[int, ...]:
        return tuple(u for u, _ in self.walks[f])

    def across(self, dart: Dart) -> int:
        """Грань по другую сторону ребра дуги."""
        u, v = dart
        return self.dart_face[(v, u)]


def face_table(pg: PlaneGraph) -> FaceTable:
    if pg.graph.m == 0:
        raise EmbeddingError("в графе нет рёбер: граней для разгрузки нет")
    faces(pg)  # проверка связности и формулы Эйлера
    walks = pg.face_darts()
    dart_face = {d: f for f, walk in enumerate(walks) for d in walk}
    return FaceTable(walks, dart_face)


# --------- Заряды ---------

def initial_charges(pg: PlaneGraph, table: Optional[FaceTable] = None) -> ChargeLedger:
    """ω(v) = 2d(v) - 6, ω(f) = d(f) - 6; для связной плоской укладки сумма равна -12."""
    table = table or face_table(pg)
    g = pg.graph
    ledger = ChargeLedger(
        vertex_charge={v: Fraction(2 * g.degree(v) - 6) for v in range(g.n)},
        face_charge={f: Fraction(table.length(f) - 6) for f in range(len(table.walks))},
    )
    if ledger.total() != EULER_TOTAL:
        raise EmbeddingError(f"сумма начальных зарядов {ledger.total()} вместо -12")
    return ledger


def apply_rule_R(pg: PlaneGraph, ledger: ChargeLedger, table: Optional[FaceTable] = None) -> ChargeLedger:
    """
    Каждая грань длины ≥ 9 отдаёт 1 каждой инцидентной 2-вершине (за каждое вхождение
    в обход) и 1 каждой 3-грани за каждое общее ребро.
    """
    table = table or face_table(pg)
    g = pg.graph
    out = ledger.copy()
    one = Fraction(1)
    for f, walk in enumerate(table.walks):
        if len(walk) < BIG_FACE:
            continue
        for dart in walk:
            u = dart[0]
            if g.degree(u) == 2:
                out.move(Transfer(f, ("vertex", u), one))
            other = table.across(dart)
            if other != f and table.length(other) == 3:
                out.move(Transfer(f, ("face", other), one))
    if out.total() != ledger.total():
        raise AssertionError("правило (R) изменило суммарный заряд")
    return out


def face_boundary(pg: PlaneGraph, f: int, table: Optional[FaceTable] = None) -> Optional[CycleBoundary]:
    """
    Граница грани как CycleBoundary: пары — рёбра грани, общие с 3-гранью.
    None, если обход не простой цикл или структура нарушает инварианты границы.
    """
    table = table or face_table(pg)
    walk = table.walks[f]
    verts = table.vertices(f)
    d = len(verts)
    if d < 3 or len(set(verts)) != d:
        return None
    g = pg.graph
    pairs = []
    for i, dart in enumerate(walk):
        other = table.across(dart)
        if other != f and table.length(other) == 3:
            pairs.append((i, (i + 1) % d))
    in_pair = {p for pair in pairs for p in pair}
    kinds = []
    for i, v in enumerate(verts):
        deg = g.degree(v)
        if deg == 2:
            if i in in_pair:
                return None
            kinds.append(TWO)
        elif deg == 3:
            kinds.append(THREE_TRI if i in in_pair else THREE_A)
        else:
            return None
    try:
        return CycleBoundary(d, tuple(kinds), frozenset(pairs))
    except BoundaryError as e:
        logger.debug("Грань %d: граница вне модели (%s)", f, e)
        return None


# --------- Аудит ---------

def _in_triangle(pg: PlaneGraph, v: int) -> bool:
    nbrs = sorted(pg.graph.neighbors(v))
    return any(pg.graph.has_edge(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:])


def _vertex_excuse(pg: PlaneGraph, table: FaceTable, v: int) -> Optional[str]:
    g = pg.graph
    deg = g.degree(v)
    if deg not in (2, 3):
        return f"степень {deg} вне {{2, 3}}"
    if deg == 2:
        if _in_triangle(pg, v):
            return "2-вершина в треугольнике"
        if any(g.degree(u) == 2 for u in g.neighbors(v)):
            return "2-вершина смежна с 2-вершиной"
        short = sorted(
            table.length(f) for d, f in table.dart_face.items() if d[0] == v and table.length(f) < BIG_FACE
        )
        if short:
            return f"2-вершина на грани длины {short[0]} < {BIG_FACE}"
    return None


def _face_excuse(pg: PlaneGraph, table: FaceTable, f: int) -> Optional[str]:
    d = table.length(f)
    if d < 3:
        return f"грань длины {d}: обход вырожден"
    if 4 <= d < BIG_FACE:
        return f"грань длины {d} ∈ 4..{BIG_FACE - 1}"
    if d == 3:
        short = [table.length(table.across(dart)) for dart in table.walks[f]]
        short = [x for x in short if x < BIG_FACE]
        if short:
            return f"3-грань граничит по ребру с гранью длины {min(short)} < {BIG_FACE}"
        return None
    if face_boundary(pg, f, table) is None:
        return "граница не простой цикл с допустимой структурой"
    return None


@dataclass
class AuditReport:
    verdict: Verdict
    total_initial: Fraction
    total_final: Fraction
    transfers: int
    negatives: List[Dict[str, Any]] = field(default_factory=list)
    excused: List[Dict[str, Any]] = field(default_factory=list)
    t_mismatches: List[Dict[str, Any]] = field(default_factory=list)
    faces: int = 0
    ledger: Optional[ChargeLedger] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "result": self.verdict.value,
            "total_initial": str(self.total_initial),
            "total_final": str(self.total_final),
            "transfers": self.transfers,
            "faces": self.faces,
            "negatives": self.negatives,
            "excused": self.excused,
            "t_mismatches": self.t_mismatches,
        }


def _describe(table: FaceTable, element: Element, charge: Fraction) -> Dict[str, Any]:
    kind, idx = element
    out: Dict[str, Any] = {"element": f"{kind} {idx}", "charge": str(charge)}
    if kind == "face":
        out["length"] = table.length(idx)
        out["vertices"] = list(table.vertices(idx))
    return out


def audit(pg: PlaneGraph) -> AuditReport:
    """
    Начальные заряды, правило (R), проверка сохранения суммы. Элемент с
    отрицательным итоговым зарядом либо оправдан нарушением структурной
    гипотезы минимального контрпримера, либо попадает в negatives.
    """
    table = face_table(pg)
    initial = initial_charges(pg, table)
    final = apply_rule_R(pg, initial, table)
    report = AuditReport(
        verdict=Verdict.PASS,
        total_initial=initial.total(),
        total_final=final.total(),
        transfers=len(final.transfers),
        faces=len(table.walks),
        ledger=final,
    )

    sent: Dict[int, int] = {}
    for t in final.transfers:
        sent[t.source] = sent.get(t.source, 0) + 1
    for f in range(len(table.walks)):
        if table.length(f) < BIG_FACE:
            continue
        b = face_boundary(pg, f, table)
        if b is not None and t_of(b) != sent.get(f, 0):
            report.t_mismatches.append({"face": f, "t": t_of(b), "transfers": sent.get(f, 0)})

    elements: List[Element] = [("vertex", v) for v in range(pg.graph.n)]
    elements += [("face", f) for f in range(len(table.walks))]
    for element in elements:
        charge = final.charge(element)
        if charge >= 0:
            continue
        kind, idx = element
        row = _describe(table, element, charge)
        excuse = _vertex_excuse(pg, table, idx) if kind == "vertex" else _face_excuse(pg, table, idx)
        if kind == "face" and table.length(idx) >= BIG_FACE:
            row["t"] = sent.get(idx, 0)
            row["d_minus_6"] = table.length(idx) - 6
        if excuse is None:
            report.negatives.append(row)
        else:
            row["excuse"] = excuse
            report.excused.append(row)

    conserved = report.total_initial == EULER_TOTAL and report.total_final == EULER_TOTAL
    if report.negatives or report.t_mismatches or not conserved:
        report.verdict = Verdict.FAIL
        logger.warning(
            "Аудит разгрузки: %d отрицательных элементов без оправдания, %d расхождений t(f)",
            len(report.negatives), len(report.t_mismatches),
        )
    else:
        logger.info("Аудит разгрузки: PASS, %d оправданных отрицательных элементов", len(report.excused))
    return report

