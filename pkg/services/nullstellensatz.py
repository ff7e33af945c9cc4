# services/nullstellensatz.py

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from services.assignments import SizeProfile
from services.graph import Graph

logger = logging.getLogger(__name__)

Factor = Tuple[int, int]


# --------- Многочлен графа ---------

@dataclass(frozen=True)
class GraphPolynomial:
    """Произведение (x_u - x_v) по рёбрам, u < v."""

    nvars: int
    factors: Tuple[Factor, ...]

    def __post_init__(self) -> None:
        for u, v in self.factors:
            if not (0 <= u < v < self.nvars):
                raise ValueError(f"множитель ({u}, {v}) не является ребром с u < v на {self.nvars} переменных")

    def __len__(self) -> int:
        return len(self.factors)

    def incidence(self) -> List[int]:
        count = [0] * self.nvars
        for u, v in self.factors:
            count[u] += 1
            count[v] += 1
        return count


def graph_polynomial(g: Graph) -> GraphPolynomial:
    return GraphPolynomial(g.n, tuple(g.sorted_edges()))


# --------- Многочлен с ограниченными степенями ---------

class CappedPolynomial:
    """
    Разреженный многочлен от nvars переменных; степень x_i не превосходит caps[i].
    Вектор показателей упакован в целое число в смешанной системе счисления
    с основаниями caps[i] + 1; нулевые коэффициенты не хранятся.
    """

    def __init__(self, caps: Sequence[int]) -> None:
        self.caps: Tuple[int, ...] = tuple(caps)
        if any(c < 0 for c in self.caps):
            raise ValueError(f"ограничения степеней должны быть ≥ 0: {self.caps}")
        self.nvars = len(self.caps)
        strides = []
        acc = 1
        for c in self.caps:
            strides.append(acc)
            acc *= c + 1
        self.strides: Tuple[int, ...] = tuple(strides)
        self.terms: Dict[int, int] = {0: 1}

    def pack(self, exponents: Sequence[int]) -> int:
        if len(exponents) != self.nvars:
            raise ValueError("длина вектора показателей не совпадает с числом переменных")
        key = 0
        for e, c, s in zip(exponents, self.caps, self.strides):
            if not 0 <= e <= c:
                raise ValueError(f"показатель {e} вне ограничения {c}")
            key += e * s
        return key

    def unpack(self, key: int) -> Tuple[int, ...]:
        return tuple((key // s) % (c + 1) for c, s in zip(self.caps, self.strides))

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterator[Tuple[Tuple[int, ...], int]]:
        for key, coef in self.terms.items():
            yield self.unpack(key), coef

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.terms.get(self.pack(exponents), 0)

    def multiply_binomial(
        self,
        u: int,
        v: int,
        slack_u: Optional[int] = None,
        slack_v: Optional[int] = None,
    ) -> None:
        """
        Умножение на (x_u - x_v) с отбрасыванием членов сверх ограничений.
        slack_u/slack_v — сколько множителей с x_u/x_v ещё впереди; член, которому
        уже не добрать степень до ограничения, отбрасывается сразу.
        """
        su, sv = self.strides[u], self.strides[v]
        bu, bv = self.caps[u] + 1, self.caps[v] + 1
        cu, cv = self.caps[u], self.caps[v]
        ru = cu if slack_u is None else slack_u
        rv = cv if slack_v is None else slack_v
        new: Dict[int, int] = {}
        get = new.get
        for key, coef in self.terms.items():
            eu = (key // su) % bu
            ev = (key // sv) % bv
            # x_u: степень u растёт, дефицит v не меняется
            if eu < cu and cu - eu - 1 <= ru and cv - ev <= rv:
                k = key + su
                new[k] = get(k, 0) + coef
            if ev < cv and cu - eu <= ru and cv - ev - 1 <= rv:
                k = key + sv
                new[k] = get(k, 0) - coef
        self.terms = {k: c for k, c in new.items() if c}


# --------- Коэффициент монома ---------

@dataclass
class Expansion:
    coefficient: int
    term_peak: int
    factor_order: List[Factor] = field(default_factory=list)


def _greedy_order(p: GraphPolynomial) -> List[Factor]:
    """Сначала множители, которые быстрее закрывают переменные (меньше оставшихся вхождений)."""
    remaining = p.incidence()
    pending = sorted(p.factors)
    order = []
    while pending:
        best = min(pending, key=lambda f: (remaining[f[0]] + remaining[f[1]], f))
        pending.remove(best)
        order.append(best)
        remaining[best[0]] -= 1
        remaining[best[1]] -= 1
    return order


def expand(
    p: GraphPolynomial,
    target: Sequence[int],
    reorder: bool = False,
    order: Optional[Sequence[Factor]] = None,
) -> Expansion:
    """
    Раскрывает произведение с ограничениями = target; возвращает коэффициент и пик числа членов.
    order — явный порядок множителей (перестановка p.factors), иначе сортированный или жадный.
    """
    target = tuple(int(t) for t in target)
    if len(target) != p.nvars:
        raise ValueError(f"целевой моном на {len(target)} переменных, а многочлен на {p.nvars}")
    if order is not None:
        order = [tuple(f) for f in order]
        if sorted(order) != sorted(p.factors):
            raise ValueError("order должен быть перестановкой множителей многочлена")
        if reorder:
            raise ValueError("order и reorder взаимоисключающие")
    if any(t < 0 for t in target) or sum(target) != len(p.factors):
        # однородность: коэффициент тождественно 0
        return Expansion(coefficient=0, term_peak=0)

    if order is None:
        order = _greedy_order(p) if reorder else sorted(p.factors)
    remaining = p.incidence()
    poly = CappedPolynomial(target)
    peak = 1
    for step, (u, v) in enumerate(order, 1):
        remaining[u] -= 1
        remaining[v] -= 1
        poly.multiply_binomial(u, v, remaining[u], remaining[v])
        peak = max(peak, len(poly))
        if poly.terms:
            sample = next(iter(poly.terms))
            assert sum(poly.unpack(sample)) == step, "нарушена однородность"
        else:
            break
    target_key = poly.pack(target)
    assert all(k == target_key for k in poly.terms), "после раскрытия остались члены не целевой степени"
    coef = poly.terms.get(target_key, 0)
    logger.debug("Коэффициент при %s: %d (пик членов %d)", target, coef, peak)
    return Expansion(coefficient=coef, term_peak=peak, factor_order=order)


def monomial_coefficient(p: GraphPolynomial, target: Sequence[int], reorder: bool = False) -> int:
    return expand(p, target, reorder).coefficient


@dataclass
class Certificate:
    coefficient: int
    dominated: bool
    certified: bool
    term_peak: int
    short: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "coefficient": self.coefficient,
            "profile_dominates_target": self.dominated,
            "certified": self.certified,
            "term_peak": self.term_peak,
            "short_vertices": self.short,
        }


def certify(g: Graph, profile: SizeProfile, target: Sequence[int]) -> Certificate:
    if len(profile) != g.n or len(target) != g.n:
        raise ValueError("профиль и целевой моном должны быть заданы для всех вершин графа")
    short = [i for i in range(g.n) if profile[i] < target[i] + 1]
    dominated = not short
    exp = expand(graph_polynomial(g), target)
    return Certificate(
        coefficient=exp.coefficient,
        dominated=dominated,
        certified=dominated and exp.coefficient != 0,
        term_peak=exp.term_peak,
        short=short,
    )


def certify_choosable(g: Graph, profile: SizeProfile, target: Sequence[int]) -> bool:
    """Истина означает L-раскрашиваемость для любого назначения с размерами profile."""
    return certify(g, profile, target).certified
