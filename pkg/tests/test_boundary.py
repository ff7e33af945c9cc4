"""Границы циклов: сегменты, тождества, перебор и классификация."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from services.boundary import (
    THREE_A,
    THREE_PENDANT,
    THREE_TRI,
    TWO,
    BoundaryError,
    CycleBoundary,
    IdentityViolation,
    UnclassifiableArc,
    bound_holds,
    canonical_key,
    canonical_tokens,
    case_identities,
    check_bound,
    classify_boundaries,
    decompose,
    describe_boundary,
    enumerate_boundaries,
    enumerate_extremal,
    segment_t,
    project,
    t_of,
)
from services.catalog import get


def _b(tokens: str) -> CycleBoundary:
    return CycleBoundary.from_tokens(list(tokens))


def test_t_counts_two_vertices_and_triangle_pairs():
    assert t_of(_b("TWTAWAWA")) == 5
    assert t_of(_b("TTTTT")) == 5
    assert t_of(_b("AAAA")) == 0


def test_pendant_is_an_a_vertex():
    b = CycleBoundary(4, (TWO, THREE_PENDANT, TWO, THREE_A))
    assert b.kinds[1] == THREE_A
    assert b.tokens() == ("W", "A", "W", "A")


def test_pair_across_position_zero():
    b = CycleBoundary(4, (THREE_TRI, TWO, THREE_A, THREE_TRI), frozenset({(3, 0)}))
    assert b.tokens() == ("T", "W", "A")
    assert t_of(b) == 2


@pytest.mark.parametrize(
    "d, kinds, pairs",
    [
        (4, (TWO, TWO, THREE_A, THREE_A), ()),
        (4, (THREE_TRI, THREE_TRI, THREE_A, THREE_A), ((0, 2),)),
        (4, (THREE_TRI, THREE_TRI, THREE_A, THREE_A), ()),
        (4, (THREE_TRI, THREE_TRI, THREE_TRI, THREE_A), ((0, 1), (1, 2))),
        (3, (THREE_A, THREE_A), ()),
        (3, (THREE_A, THREE_A, "X"), ()),
        (4, (TWO, THREE_A, THREE_A, TWO), ()),
    ],
)
def test_invalid_boundaries(d, kinds, pairs):
    with pytest.raises(BoundaryError):
        CycleBoundary(d, kinds, frozenset(pairs))


def test_decompose_h3():
    segments = decompose(project(get("H3")))
    assert [s.kind for s in segments] == ["S1", "S1", "S3"]
    assert sum(s.size - 1 for s in segments) == 10
    assert segments[2].positions == (9, 0, 1, 2, 3, 4, 5)


def test_adjacent_a_vertices_form_s5():
    segments = decompose(_b("AAWAW"))
    assert [s.kind for s in segments] == ["S5", "S1", "S1"]
    assert segments[0].positions == (0, 1)


def test_single_a_vertex_wraps_around():
    b = _b("ATT")
    (segment,) = decompose(b)
    assert segment.kind == "S4" and segment.l == 2
    assert segment.positions == (0, 1, 2, 3, 4, 0)
    census = case_identities(b)
    assert census.k == 1 and census.l_sum == 2


def test_decompose_needs_a_vertex():
    with pytest.raises(BoundaryError):
        decompose(_b("TTTTT"))


def test_unclassifiable_arc():
    with pytest.raises(UnclassifiableArc) as info:
        decompose(_b("AWTW"))
    assert info.value.tokens == ("W", "T", "W")
    assert describe_boundary(_b("AWTW"))["unclassifiable"] == "W T W"


def test_bound():
    assert bound_holds(9, 4) and not bound_holds(9, 5)
    assert bound_holds(10, 5) and not bound_holds(10, 6)
    assert check_bound(_b("WAWAWAWAA"))
    assert not check_bound(_b("WAWTWTA"))
    with pytest.raises(BoundaryError):
        check_bound(_b("WAWAWAWA"))


@pytest.mark.parametrize(
    "name, expected",
    [
        ("H1", {"k": 0, "s1": 0, "s2": 0, "s3": 0, "s4": 0, "s5": 0}),
        ("H2", {"k": 2, "s1": 0, "s2": 1, "s3": 1, "s4": 0, "s5": 0}),
        ("H3", {"k": 3, "s1": 2, "s2": 0, "s3": 1, "s4": 0, "s5": 0}),
        ("H4", {"k": 5, "s1": 5, "s2": 0, "s3": 0, "s4": 0, "s5": 0}),
    ],
)
def test_census_of_ten_cycles(name, expected):
    census = case_identities(project(get(name))).to_dict()
    assert census["d"] == 10 and census["t"] == 5
    assert {key: census[key] for key in expected} == expected


def test_census_of_nine_cycles_satisfies_identities():
    for i in range(1, 13):
        census = case_identities(project(get(f"F{i}")))
        assert census.d == 9 and census.t == 4
        assert census.k + census.s["S2"] + 2 * census.s["S3"] + census.l_sum == 5


def test_identity_violations():
    # одна вершина A(C) и сегмент S3: d = 6 чётно
    with pytest.raises(IdentityViolation):
        case_identities(_b("ATWT"))
    with pytest.raises(IdentityViolation):
        case_identities(_b("TTW"))
    assert "identity_violation" in describe_boundary(_b("TTW"))


@given(st.lists(st.sampled_from("WTA"), min_size=2, max_size=8), st.integers(0, 7), st.booleans())
def test_canonical_key_ignores_rotation_and_reflection(tokens, shift, flip):
    shift %= len(tokens)
    moved = tokens[shift:] + tokens[:shift]
    if flip:
        moved = moved[::-1]
    assert canonical_tokens(moved) == canonical_tokens(tokens)


def test_canonical_key_of_boundary():
    assert canonical_key(_b("WAWTA")) == canonical_key(_b("ATWAW"))


def test_extremal_counts():
    assert len(enumerate_extremal(10)) == 4
    assert len(enumerate_extremal(9)) == 12
    assert len(enumerate_boundaries(10, 5, t_filter=False)) > 4
    with pytest.raises(BoundaryError):
        enumerate_extremal(8)


def test_enumerated_boundaries_are_canonical_and_consistent():
    for d in (9, 10, 11):
        seen = set()
        for b in enumerate_boundaries(d):
            key = canonical_key(b)
            assert key == b.tokens()
            assert key not in seen
            seen.add(key)
            assert "W" + "W" not in "".join(key) + key[0]
            if b.a_positions:
                assert sum(s.size - 1 for s in decompose(b)) == d


def test_enumeration_with_fixed_t():
    for b in enumerate_boundaries(10, 4):
        assert t_of(b) == 4


@pytest.mark.parametrize("d, family", [(10, "H"), (9, "F")])
def test_classification_matches_catalog(d, family):
    report = classify_boundaries(d)
    assert report.verdict.value == "PASS", report.to_dict()
    expected = {f"{family}{i}" for i in range(1, 5 if family == "H" else 13)}
    assert set(report.names) == expected
    assert report.unmatched == [] and report.missing == []


def test_project_needs_closed_cycle():
    with pytest.raises(BoundaryError):
        project(get("T1"))


@pytest.mark.parametrize(
    "tokens, kind, t",
    [
        ("AWAW", "S1", 1),
        ("AWTAW", "S2", 2),
        ("ATWTAW", "S3", 3),
        ("ATTTAW", "S4", 3),
        ("AAWAW", "S5", 0),
    ],
)
def test_segment_t_is_half_of_its_length(tokens, kind, t):
    segment = decompose(_b(tokens))[0]
    assert segment.kind == kind
    assert segment_t(segment) == t == (segment.size - 1) // 2


def test_segment_t_over_enumerated_boundaries():
    for d in (9, 10, 11, 12):
        for b in enumerate_boundaries(d):
            if not b.a_positions:
                continue
            for segment in decompose(b):
                assert segment_t(segment) == (segment.size - 1) // 2
