"""Канонический перебор назначений списков."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.assignments import (
    ListAssignment,
    ListsRelation,
    PaletteError,
    SizeProfile,
    canonical_enumerate,
    canonical_prefixes,
    colors_of,
    count_canonical,
    iter_canonical_masks,
    mask_of,
    random_assignment,
    restrict,
)


def _relabel(lists):
    """Цвета в порядке первого появления (внутри списка — по возрастанию)."""
    mapping = {}
    out = []
    for L in lists:
        for c in sorted(L):
            if c not in mapping:
                mapping[c] = len(mapping)
        out.append(mask_of(mapping[c] for c in L))
    return tuple(out)


def test_p4_stream_size():
    stream = list(iter_canonical_masks((2, 3, 2, 2)))
    assert len(stream) == 673
    assert len(set(stream)) == 673
    assert count_canonical((2, 3, 2, 2)) == 673


@pytest.mark.parametrize(
    "sizes, expected",
    [
        ((2, 3, 4, 3, 3), 274_392),
    ],
)
def test_stream_sizes_of_lemma_profiles(sizes, expected):
    assert count_canonical(sizes) == expected


def test_first_list_is_smallest_colors():
    first = next(canonical_enumerate(SizeProfile((3, 2))))
    assert first[0] == frozenset({0, 1, 2})
    assert first[1] == frozenset({0, 1})


def test_enumerated_lists_have_exact_sizes():
    profile = SizeProfile((2, 3, 2))
    for L in canonical_enumerate(profile, order=(2, 0, 1)):
        assert L.matches(profile)


def test_enumerate_rejects_bad_order():
    with pytest.raises(ValueError):
        list(canonical_enumerate(SizeProfile((1, 1)), order=(0, 0)))


def test_prefix_partitions_cover_stream_in_order():
    sizes = (2, 3, 2, 2)
    prefixes = canonical_prefixes(sizes, 16)
    assert len(prefixes) >= 16
    joined = [m for p in prefixes for m in iter_canonical_masks(sizes, p)]
    assert joined == list(iter_canonical_masks(sizes))


def test_prefixes_of_short_profile_are_complete_assignments():
    prefixes = canonical_prefixes((1, 1), 100)
    assert prefixes == list(iter_canonical_masks((1, 1)))


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=4).flatmap(
        lambda sizes: st.tuples(
            st.just(tuple(sizes)),
            st.tuples(*[st.sets(st.integers(0, 6), min_size=s, max_size=s) for s in sizes]),
        )
    )
)
def test_every_assignment_has_a_canonical_representative(case):
    sizes, lists = case
    assert _relabel(lists) in set(iter_canonical_masks(sizes))


def test_colors_are_used_in_first_appearance_order():
    for masks in iter_canonical_masks((2, 2, 3)):
        used = 0
        for m in masks:
            fresh = m & ~used
            if fresh:
                assert fresh == ((1 << fresh.bit_count()) - 1) << used.bit_length()
            used |= m


def test_random_assignment_is_seeded():
    profile = SizeProfile((2, 3, 4))
    a = random_assignment(profile, 12, seed=5)
    assert a == random_assignment(profile, 12, seed=5)
    assert a.sizes() == (2, 3, 4)
    assert all(c < 12 for L in a.lists for c in L)


def test_random_assignment_palette_too_small():
    with pytest.raises(PaletteError):
        random_assignment(SizeProfile((2, 5)), 4, seed=1)


def test_size_profile_rejects_empty_lists():
    with pytest.raises(ValueError):
        SizeProfile((2, 0))


def test_restrict():
    L = ListAssignment((frozenset({0, 1}), frozenset({1, 2})))
    R = restrict(L, {0: [0], 1: [1, 2]})
    assert R[0] == frozenset({1})
    assert R[1] == frozenset()
    with pytest.raises(ValueError):
        restrict(L, {5: [0]})


def test_lists_relation():
    same = ListsRelation(0, 2, equal=True)
    diff = ListsRelation(0, 2, equal=False)
    assert same((3, 1, 3)) and not diff((3, 1, 3))
    assert diff((3, 1, 5))
    assert diff.describe(("v1", "v2", "v3")) == "L(v1) != L(v3)"


def test_mask_helpers():
    assert mask_of([0, 2, 3]) == 0b1101
    assert colors_of(0b1101) == [0, 2, 3]
    assert ListAssignment.from_masks((0b11,)).to_json(["v1"]) == {"v1": [0, 1]}


def test_small_stream_matches_brute_force_count():
    # два класса: второй список содержит цвет первого или нет
    canon = set()
    for a, b in itertools.product(itertools.combinations(range(3), 1), itertools.combinations(range(3), 2)):
        canon.add(_relabel((set(a), set(b))))
    assert canon == set(iter_canonical_masks((1, 2)))


def _venn(lists):
    """Сколько цветов лежит ровно в списках каждого непустого набора вершин; не меняется при переименовании."""
    counts = {}
    for c in set().union(*lists):
        owners = tuple(i for i, L in enumerate(lists) if c in L)
        counts[owners] = counts.get(owners, 0) + 1
    return tuple(sorted(counts.items()))


SMALL_PROFILES = [
    sizes
    for k in (1, 2, 3)
    for sizes in itertools.product(range(1, 8), repeat=k)
    if sum(sizes) <= 7
]


@pytest.mark.parametrize("sizes", SMALL_PROFILES)
def test_canonical_stream_is_complete_for_small_profiles(sizes):
    palette = range(sum(sizes))
    by_brute_force = {
        _venn(lists)
        for lists in itertools.product(*[[set(c) for c in itertools.combinations(palette, s)] for s in sizes])
    }
    canonical = {_venn([set(colors_of(m)) for m in masks]) for masks in iter_canonical_masks(sizes)}
    assert canonical == by_brute_force
    assert all(max(m.bit_length() for m in masks) <= sum(sizes) for masks in iter_canonical_masks(sizes))
