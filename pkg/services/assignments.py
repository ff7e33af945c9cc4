# services/assignments.py

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Masks = Tuple[int, ...]


class PaletteError(ValueError):
    """Палитра меньше требуемого размера списка."""


# --------- Типы ---------

@dataclass(frozen=True)
class SizeProfile:
    """Требуемые размеры списков по вершинам (записанные в каталоге размеры)."""

    sizes: Tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.sizes)
        if any(s < 1 for s in sizes):
            raise ValueError(f"размеры списков должны быть ≥ 1: {sizes}")
        object.__setattr__(self, "sizes", sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sizes)

    def __getitem__(self, v: int) -> int:
        return self.sizes[v]

    @property
    def total(self) -> int:
        return sum(self.sizes)


def mask_of(colors: Iterable[int]) -> int:
    mask = 0
    for c in colors:
        mask |= 1 << c
    return mask


def colors_of(mask: int) -> List[int]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return out


@dataclass(frozen=True)
class ListAssignment:
    """lists[v] — множество допустимых цветов вершины v."""

    lists: Tuple[FrozenSet[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lists", tuple(frozenset(x) for x in self.lists))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "ListAssignment":
        return cls(tuple(frozenset(colors_of(m)) for m in masks))

    def __len__(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> FrozenSet[int]:
        return self.lists[v]

    def masks(self) -> Masks:
        return tuple(mask_of(x) for x in self.lists)

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(x) for x in self.lists)

    def matches(self, profile: SizeProfile) -> bool:
        return self.sizes() == profile.sizes

    def to_json(self, labels: Optional[Sequence[str]] = None) -> Dict[str, List[int]]:
        return assignment_to_json(self, labels)


def assignment_to_json(L: ListAssignment, labels: Optional[Sequence[str]] = None) -> Dict[str, List[int]]:
    names = labels if labels is not None else [str(v) for v in range(len(L))]
    return {names[v]: sorted(L[v]) for v in range(len(L))}


# --------- Канонический перебор ---------

@lru_cache(maxsize=None)
def _choices(used: int, size: int) -> Tuple[Tuple[int, int], ...]:
    """
    Варианты списка размера size при уже использованных цветах 0..used-1:
    j старых цветов (j по убыванию, сочетания в лексикографическом порядке)
    плюс size-j наименьших свежих. Возвращает пары (маска, новое used).
    """
    out = []
    for j in range(min(size, used), -1, -1):
        fresh = size - j
        fresh_mask = ((1 << fresh) - 1) << used
        for combo in combinations(range(used), j):
            out.append((mask_of(combo) | fresh_mask, used + fresh))
    return tuple(out)


def iter_canonical_masks(sizes: Sequence[int], prefix: Masks = ()) -> Iterator[Masks]:
    """
    Канонические назначения в виде кортежей масок (в порядке обработки вершин).
    prefix — уже выбранные списки первых вершин, сам тоже канонический.
    """
    n = len(sizes)
    current = list(prefix) + [0] * (n - len(prefix))
    used = 0
    for mask in prefix:
        used |= mask
    used = used.bit_length()
    sizes = tuple(sizes)

    if len(prefix) == n:
        yield tuple(current)
        return

    def _rec(i: int, used: int) -> Iterator[Masks]:
        options = _choices(used, sizes[i])
        if i == n - 1:
            for mask, _ in options:
                current[i] = mask
                yield tuple(current)
            return
        for mask, nxt in options:
            current[i] = mask
            yield from _rec(i + 1, nxt)

    yield from _rec(len(prefix), used)


def canonical_prefixes(sizes: Sequence[int], target: int) -> List[Masks]:
    """
    Разбиение пространства перебора: все канонические префиксы наименьшей
    длины, при которой их не меньше target (или полные назначения).
    Порядок префиксов совпадает с порядком потока.
    """
    depth = 1
    while True:
        prefixes = list(iter_canonical_masks(sizes[:depth]))
        if len(prefixes) >= target or depth >= len(sizes):
            return prefixes
        depth += 1


def count_canonical(sizes: Sequence[int]) -> int:
    """Длина канонического потока (динамика по числу использованных цветов)."""
    states: Dict[int, int] = {0: 1}
    for size in sizes:
        nxt: Dict[int, int] = {}
        for used, count in states.items():
            for _, u2 in _choices(used, size):
                nxt[u2] = nxt.get(u2, 0) + count
        states = nxt
    return sum(states.values())


def canonical_enumerate(profile: SizeProfile, order: Optional[Sequence[int]] = None) -> Iterator[ListAssignment]:
    """
    Все назначения с точными размерами profile в канонической форме: вершины
    обрабатываются в порядке order, каждый список — подмножество уже
    использованных цветов, дополненное наименьшими свежими.
    """
    n = len(profile)
    order = tuple(range(n)) if order is None else tuple(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"order должен быть перестановкой вершин 0..{n - 1}: {order}")
    sizes = [profile[v] for v in order]
    for masks in iter_canonical_masks(sizes):
        lists: List[FrozenSet[int]] = [frozenset()] * n
        for pos, v in enumerate(order):
            lists[v] = frozenset(colors_of(masks[pos]))
        yield ListAssignment(tuple(lists))


@dataclass(frozen=True)
class ListsRelation:
    """Фильтр потока: списки на позициях first и second равны (equal=True) или различны."""

    first: int
    second: int
    equal: bool

    def __call__(self, masks: Masks) -> bool:
        return (masks[self.first] == masks[self.second]) == self.equal

    def describe(self, labels: Optional[Sequence[str]] = None) -> str:
        a = labels[self.first] if labels else str(self.first)
        b = labels[self.second] if labels else str(self.second)
        return f"L({a}) {'=' if self.equal else '!='} L({b})"


# --------- Случайные назначения и ограничение ---------

def random_assignment(profile: SizeProfile, palette: int, seed: int) -> ListAssignment:
    """Каждый список — равномерное подмножество палитры нужного размера; детерминировано по seed."""
    largest = max(profile.sizes, default=0)
    if palette < largest:
        raise PaletteError(f"палитра {palette} меньше требуемого размера списка {largest}")
    rng = random.Random(seed)
    return ListAssignment(tuple(frozenset(rng.sample(range(palette), s)) for s in profile))


def restrict(L: ListAssignment, forbidden: Mapping[int, Iterable[int]]) -> ListAssignment:
    """L'(v) = L(v) \\ forbidden(v); пустой список допустим."""
    unknown = [v for v in forbidden if not 0 <= v < len(L)]
    if unknown:
        raise ValueError(f"вершины вне назначения: {unknown}")
    return ListAssignment(
        tuple(L[v] - frozenset(forbidden.get(v, ())) for v in range(len(L)))
    )
