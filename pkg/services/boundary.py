# services/boundary.py

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from services import catalog as catalog_mod
from services.catalog import Configuration
from utils.report import Verdict

logger = logging.getLogger(__name__)

TWO = "TWO"
THREE_PENDANT = "THREE_PENDANT"
THREE_TRI = "THREE_TRI"
THREE_A = "THREE_A"
KINDS = (TWO, THREE_PENDANT, THREE_TRI, THREE_A)

# Токены: W — 2-вершина, T — пара вершин треугольника (две позиции), A — вершина A(C)
TOKEN_WIDTH = {"W": 1, "T": 2, "A": 1}

Pair = Tuple[int, int]


class BoundaryError(ValueError):
    """Некорректная граница цикла."""


class UnclassifiableArc(BoundaryError):
    """Дуга между соседними вершинами A(C) не совпала ни с одним из S1–S5."""

    def __init__(self, tokens: Sequence[str], positions: Sequence[int]) -> None:
        self.tokens = tuple(tokens)
        self.positions = tuple(positions)
        super().__init__(f"дуга {' '.join(self.tokens) or '∅'} на позициях {list(self.positions)} не классифицируется")


class IdentityViolation(BoundaryError):
    """Нарушено одно из тождеств подсчёта сегментов."""


# --------- Граница цикла ---------

@dataclass(frozen=True)
class CycleBoundary:
    d: int
    kinds: Tuple[str, ...]
    tri_pairs: FrozenSet[Pair] = frozenset()

    def __post_init__(self) -> None:
        d = self.d
        # THREE_PENDANT — та же вершина A(C): третье ребро не замыкает треугольник на цикле
        kinds = tuple(THREE_A if k == THREE_PENDANT else k for k in self.kinds)
        object.__setattr__(self, "kinds", kinds)
        pairs = frozenset((int(a), int(b)) for a, b in self.tri_pairs)
        object.__setattr__(self, "tri_pairs", pairs)

        if d < 3 or len(kinds) != d:
            raise BoundaryError(f"длина цикла {d} и число позиций {len(kinds)} не согласованы")
        unknown = sorted(set(kinds) - set(KINDS))
        if unknown:
            raise BoundaryError(f"неизвестные типы вершин: {unknown}")
        covered: List[int] = []
        for a, b in pairs:
            if b != (a + 1) % d:
                raise BoundaryError(f"пара треугольника ({a}, {b}) не из соседних позиций")
            covered += [a, b]
        if len(covered) != len(set(covered)):
            raise BoundaryError("пары треугольников пересекаются")
        tri = {i for i, k in enumerate(kinds) if k == THREE_TRI}
        if tri != set(covered):
            raise BoundaryError("позиции THREE_TRI должны в точности покрываться парами")
        for i in range(d):
            if kinds[i] == TWO and kinds[(i + 1) % d] == TWO:
                raise BoundaryError(f"соседние 2-вершины на позициях {i} и {(i + 1) % d}")

    @classmethod
    def from_tokens(cls, tokens: Sequence[str]) -> "CycleBoundary":
        kinds: List[str] = []
        pairs = []
        for tok in tokens:
            if tok == "W":
                kinds.append(TWO)
            elif tok == "A":
                kinds.append(THREE_A)
            elif tok == "T":
                pairs.append((len(kinds), len(kinds) + 1))
                kinds += [THREE_TRI, THREE_TRI]
            else:
                raise BoundaryError(f"неизвестный токен {tok!r}")
        d = len(kinds)
        pairs = [(a, b % d) for a, b in pairs]
        return cls(d, tuple(kinds), frozenset(pairs))

    def _start(self) -> int:
        """Позиция, с которой токены не разрезают пару."""
        for a, b in self.tri_pairs:
            if b == 0:
                return a
        return 0

    def token_positions(self) -> List[Tuple[str, Tuple[int, ...]]]:
        firsts = {a for a, _ in self.tri_pairs}
        out = []
        i = 0
        start = self._start()
        while i < self.d:
            p = (start + i) % self.d
            if p in firsts:
                out.append(("T", (p, (p + 1) % self.d)))
                i += 2
            else:
                out.append(("W" if self.kinds[p] == TWO else "A", (p,)))
                i += 1
        return out

    def tokens(self) -> Tuple[str, ...]:
        return tuple(tok for tok, _ in self.token_positions())

    @property
    def a_positions(self) -> Tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.kinds) if k == THREE_A)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "tokens": "".join(canonical_key(self)),
            "t": t_of(self),
            "k": len(self.a_positions),
        }


def canonical_tokens(tokens: Sequence[str]) -> Tuple[str, ...]:
    """Лексикографически наименьший поворот или отражение циклической последовательности."""
    seq = tuple(tokens)
    if not seq:
        return seq
    variants = []
    for s in (seq, seq[::-1]):
        variants += [s[i:] + s[:i] for i in range(len(s))]
    return min(variants)


def canonical_key(b: CycleBoundary) -> Tuple[str, ...]:
    return canonical_tokens(b.tokens())


def t_of(b: CycleBoundary) -> int:
    return sum(1 for k in b.kinds if k == TWO) + len(b.tri_pairs)


# --------- Сегменты ---------

SEGMENT_KINDS = ("S1", "S2", "S3", "S4", "S5")


@dataclass(frozen=True)
class Segment:
    """Дуга от вершины A(C) до следующей; positions включает оба конца (при k=1 конец повторяется)."""

    kind: str
    positions: Tuple[int, ...]
    tokens: Tuple[str, ...] = ()
    l: int = 0

    @property
    def size(self) -> int:
        return len(self.positions)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind, "positions": list(self.positions), "t": segment_t(self)}
        if self.kind == "S4":
            out["l"] = self.l
        return out


def _classify_arc(interior: Tuple[str, ...]) -> Tuple[str, int]:
    for kind, shapes in catalog_mod.SEGMENT_TEMPLATES.items():
        if interior in shapes:
            return kind, 0
    repeated_kind, token = catalog_mod.REPEATED_SEGMENT
    if interior and all(tok == token for tok in interior):
        return repeated_kind, len(interior)
    return "", 0


def decompose(b: CycleBoundary) -> List[Segment]:
    """Сегменты M_1..M_k между соседними вершинами A(C), начиная с первой A по порядку токенов."""
    items = b.token_positions()
    a_idx = [i for i, (tok, _) in enumerate(items) if tok == "A"]
    if not a_idx:
        raise BoundaryError("A(C) пусто: разложение на сегменты не определено")
    items = items[a_idx[0]:] + items[:a_idx[0]]
    a_idx = [i for i, (tok, _) in enumerate(items) if tok == "A"]

    segments = []
    for j, start in enumerate(a_idx):
        end = a_idx[j + 1] if j + 1 < len(a_idx) else len(items)
        interior = items[start + 1:end]
        tokens = tuple(tok for tok, _ in interior)
        first = items[start][1][0]
        last = items[end % len(items)][1][0]
        positions = (first,) + tuple(p for _, ps in interior for p in ps) + (last,)
        kind, l = _classify_arc(tokens)
        if not kind:
            raise UnclassifiableArc(tokens, positions)
        segments.append(Segment(kind=kind, positions=positions, tokens=tokens, l=l))
    return segments


def segment_t(s: Segment) -> int:
    return {"S1": 1, "S2": 2, "S3": 3, "S4": s.l, "S5": 0}[s.kind]


# --------- Арифметика ---------

def bound_holds(d: int, t: int) -> bool:
    return t <= d - math.ceil(d / 2)


def check_bound(b: CycleBoundary) -> bool:
    if b.d < 9:
        raise BoundaryError(f"оценка t(C) ≤ d - ⌈d/2⌉ формулируется для d ≥ 9, получено d = {b.d}")
    return bound_holds(b.d, t_of(b))


@dataclass
class CaseCensus:
    d: int
    t: int
    k: int
    s: Dict[str, int] = field(default_factory=dict)
    l_values: Tuple[int, ...] = ()

    @property
    def l_sum(self) -> int:
        return sum(self.l_values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "t": self.t,
            "k": self.k,
            **{name.lower(): count for name, count in self.s.items()},
            "l_sum": self.l_sum,
        }


def _require(cond: bool, what: str, b: CycleBoundary) -> None:
    if not cond:
        raise IdentityViolation(f"{what} не выполняется для границы {''.join(canonical_key(b))}")


def case_identities(b: CycleBoundary) -> CaseCensus:
    """Подсчёт k, s1..s5, Σl и проверка тождеств между ними, d и t."""
    d, t = b.d, t_of(b)
    k = len(b.a_positions)
    if k == 0:
        census = CaseCensus(d=d, t=t, k=0, s={name: 0 for name in SEGMENT_KINDS})
        _require(d % 2 == 0 and 2 * t == d, "при A(C) = ∅: d чётно и t = d/2", b)
        return census

    segments = decompose(b)
    s = {name: sum(1 for seg in segments if seg.kind == name) for name in SEGMENT_KINDS}
    census = CaseCensus(d=d, t=t, k=k, s=s, l_values=tuple(seg.l for seg in segments if seg.kind == "S4"))
    lsum = census.l_sum
    _require(t == s["S1"] + 2 * s["S2"] + 3 * s["S3"] + lsum, "t = s1 + 2s2 + 3s3 + Σl", b)
    _require(k == sum(s.values()), "k = s1 + ... + s5", b)
    _require(d == k + s["S1"] + 3 * s["S2"] + 5 * s["S3"] + 2 * lsum, "d = k + s1 + 3s2 + 5s3 + 2Σl", b)
    _require(s["S4"] + s["S5"] == d - 2 * t, "s4 + s5 = d - 2t", b)
    _require(sum(seg.size - 1 for seg in segments) == d, "Σ(|M_i| - 1) = d", b)
    _require(t == sum(segment_t(seg) for seg in segments), "t = Σ t(M_i)", b)
    _require(
        all(segment_t(seg) == (seg.size - 1) // 2 for seg in segments), "t(M_i) = ⌊(|M_i| - 1)/2⌋", b
    )
    if t == d - 5:
        _require(5 == k + s["S2"] + 2 * s["S3"] + lsum, "5 = k + s2 + 2s3 + Σl", b)
    if k == 1:
        _require(d % 2 == 1 and 2 * t == d - 1, "при k = 1: d нечётно и t = (d-1)/2", b)
    return census


# --------- Перебор границ ---------

def _sequences(d: int) -> Iterator[Tuple[str, ...]]:
    """Все последовательности токенов суммарной ширины d."""
    def _rec(rest: int, prefix: Tuple[str, ...]) -> Iterator[Tuple[str, ...]]:
        if rest == 0:
            yield prefix
            return
        for tok in ("A", "T", "W"):
            if TOKEN_WIDTH[tok] <= rest:
                yield from _rec(rest - TOKEN_WIDTH[tok], prefix + (tok,))
    return _rec(d, ())


def _contains_cyclic(seq: Sequence[str], pattern: Sequence[str]) -> bool:
    n, m = len(seq), len(pattern)
    if m > n:
        return False
    return any(all(seq[(i + j) % n] == pattern[j] for j in range(m)) for i in range(n))


def _excluded(seq: Sequence[str], patterns: Sequence[Tuple[str, ...]]) -> bool:
    return any(_contains_cyclic(seq, p) or _contains_cyclic(seq, p[::-1]) for p in patterns)


def enumerate_boundaries(
    d: int,
    t: Optional[int] = None,
    t_filter: bool = True,
    catalog: Optional[Sequence[Configuration]] = None,
) -> List[CycleBoundary]:
    """
    Границы длины d (с данным t, если задано) без соседних 2-вершин и, при t_filter,
    без проекций T1–T3 в обоих направлениях; по одной на класс поворотов и отражений.
    """
    if d < 3:
        raise BoundaryError(f"длина цикла должна быть ≥ 3, получено {d}")
    patterns = list(catalog_mod.exclusion_patterns(catalog).values()) if t_filter else []
    seen = set()
    out = []
    for seq in _sequences(d):
        if t is not None and seq.count("W") + seq.count("T") != t:
            continue
        if _contains_cyclic(seq, ("W", "W")):
            continue
        if patterns and _excluded(seq, patterns):
            continue
        key = canonical_tokens(seq)
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
    logger.debug("d=%d t=%s фильтр=%s: %d классов", d, t, t_filter, len(out))
    return [CycleBoundary.from_tokens(key) for key in sorted(out)]


def enumerate_extremal(d: int, catalog: Optional[Sequence[Configuration]] = None) -> List[CycleBoundary]:
    if d not in (9, 10):
        raise BoundaryError(f"экстремальные границы перечисляются для d ∈ {{9, 10}}, получено {d}")
    return enumerate_boundaries(d, d - 5, True, catalog)


# --------- Сопоставление с каталогом ---------

def project(c: Configuration) -> CycleBoundary:
    if not c.cyclic:
        raise BoundaryError(f"{c.name}: конфигурация не содержит замкнутого цикла")
    return CycleBoundary.from_tokens(catalog_mod.cycle_tokens(c))


@dataclass
class Classification:
    d: int
    verdict: Verdict
    boundaries: List[Dict[str, Any]] = field(default_factory=list)
    unmatched: List[str] = field(default_factory=list)
    missing: List[str] = field(default_factory=list)

    @property
    def names(self) -> List[str]:
        return [b["name"] for b in self.boundaries if b.get("name")]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "result": self.verdict.value,
            "count": len(self.boundaries),
            "boundaries": self.boundaries,
            "names": self.names,
            "unmatched": self.unmatched,
            "missing": self.missing,
        }


def _fingerprints(d: int, catalog: Optional[Sequence[Configuration]]) -> Dict[Tuple[str, ...], str]:
    family = {10: "H", 9: "F"}[d]
    return {canonical_key(project(c)): c.name for c in catalog_mod.by_family(family, catalog)}


def describe_boundary(b: CycleBoundary, name: Optional[str] = None) -> Dict[str, Any]:
    out = b.to_dict()
    try:
        out["census"] = case_identities(b).to_dict()
        if b.a_positions:
            out["segments"] = [seg.kind for seg in decompose(b)]
    except UnclassifiableArc as e:
        out["unclassifiable"] = " ".join(e.tokens)
    except IdentityViolation as e:
        if b.a_positions:
            raise
        out["identity_violation"] = str(e)
    if name is not None:
        out["name"] = name
    return out


def classify_boundaries(d: int, catalog: Optional[Sequence[Configuration]] = None) -> Classification:
    """PASS, если экстремальные границы длины d взаимно однозначно совпадают с H (d=10) или F (d=9)."""
    found = enumerate_extremal(d, catalog)
    prints = _fingerprints(d, catalog)
    report = Classification(d=d, verdict=Verdict.PASS)
    matched = set()
    for b in found:
        key = canonical_key(b)
        name = prints.get(key)
        report.boundaries.append(describe_boundary(b, name))
        if name is None:
            report.unmatched.append("".join(key))
        else:
            matched.add(name)
    report.missing = sorted(set(prints.values()) - matched)
    if report.unmatched or report.missing or len(prints) != len(set(prints.values())):
        report.verdict = Verdict.FAIL
        logger.warning(
            "Классификация d=%d: лишние %s, не найдены %s", d, report.unmatched, report.missing
        )
    return report
