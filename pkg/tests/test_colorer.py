"""Решатель списковой раскраски и исчерпывающие леммы."""

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services import catalog
from services.assignments import ListAssignment, SizeProfile
from services.colorer import (
    J2_EQUAL,
    P4_PROFILE,
    exhaust,
    find_coloring,
    hall_extend,
    is_proper_coloring,
    sample,
    verify_lemma_j1,
    verify_lemma_j2,
    verify_lemma_j2_necessity,
    verify_lemma_p4,
)
from services.generators import complete_graph, cycle_graph, path_graph
from services.graph import Graph, square
from utils.report import Verdict


@st.composite
def graphs_with_lists(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    lists = draw(st.lists(st.sets(st.integers(0, 3), max_size=3), min_size=n, max_size=n))
    return Graph.from_edges(n, edges), ListAssignment(tuple(lists))


def _brute_force(g, L):
    for colors in itertools.product(*[sorted(x) for x in L.lists]):
        if all(colors[u] != colors[v] for u, v in g.edges):
            return True
    return False


@settings(max_examples=300, deadline=None)
@given(graphs_with_lists())
def test_solver_agrees_with_brute_force(case):
    g, L = case
    coloring = find_coloring(g, L)
    assert (coloring is not None) == _brute_force(g, L)
    if coloring is not None:
        assert is_proper_coloring(g, L, coloring)


@st.composite
def larger_graphs_with_lists(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    lists = draw(st.lists(st.sets(st.integers(0, 5), max_size=6), min_size=n, max_size=n))
    return Graph.from_edges(n, edges), ListAssignment(tuple(lists))


def _ordered_search(g, L, colors=()):
    # вершины по порядку номеров, без отсечений по доменам
    v = len(colors)
    if v == g.n:
        return True
    for c in sorted(L[v]):
        if all(colors[u] != c for u in g.neighbors(v) if u < v):
            if _ordered_search(g, L, colors + (c,)):
                return True
    return False


@settings(max_examples=500, deadline=None)
@given(larger_graphs_with_lists())
def test_solver_agrees_with_ordered_search_up_to_eight_vertices(case):
    g, L = case
    coloring = find_coloring(g, L)
    assert (coloring is not None) == _ordered_search(g, L)
    if coloring is not None:
        assert is_proper_coloring(g, L, coloring)


@settings(max_examples=200, deadline=None)
@given(graphs_with_lists(), st.lists(st.sets(st.integers(0, 5), max_size=2), min_size=6, max_size=6))
def test_enlarging_lists_keeps_colorability(case, extra):
    g, L = case
    if find_coloring(g, L) is None:
        return
    bigger = ListAssignment(tuple(L[v] | extra[v] for v in range(g.n)))
    assert find_coloring(g, bigger) is not None


@settings(max_examples=200, deadline=None)
@given(larger_graphs_with_lists(), st.randoms(use_true_random=False))
def test_lists_longer_than_degree_are_colorable(case, rnd):
    g, _ = case
    palette = list(range(10))
    L = ListAssignment(tuple(frozenset(rnd.sample(palette, g.degree(v) + 1)) for v in range(g.n)))
    coloring = find_coloring(g, L)
    assert coloring is not None
    assert is_proper_coloring(g, L, coloring)


def test_odd_cycle_with_two_colors_is_not_colorable():
    L = ListAssignment(tuple(frozenset({0, 1}) for _ in range(5)))
    assert find_coloring(cycle_graph(5), L) is None
    assert find_coloring(cycle_graph(6), ListAssignment(L.lists + (frozenset({0, 1}),))) is not None


def test_empty_list_is_not_colorable():
    L = ListAssignment((frozenset({0}), frozenset()))
    assert find_coloring(path_graph(2), L) is None


def test_assignment_length_must_match_graph():
    with pytest.raises(ValueError):
        find_coloring(path_graph(3), ListAssignment((frozenset({0}),)))


def test_hall_extend_on_clique():
    lists = {0: {1}, 1: {1, 2}, 2: {2, 3}}
    coloring = hall_extend([0, 1, 2], lists)
    assert coloring == {0: 1, 1: 2, 2: 3}
    L = ListAssignment((frozenset({1}), frozenset({1, 2}), frozenset({2, 3})))
    assert is_proper_coloring(complete_graph(3), L, coloring)
    assert hall_extend([0, 1], {0: {1}, 1: {1}}) is None
    assert hall_extend([], {}) == {}


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sets(st.integers(0, 4), min_size=1, max_size=3), min_size=1, max_size=5))
def test_hall_extend_matches_solver_on_cliques(lists):
    n = len(lists)
    L = ListAssignment(tuple(lists))
    by_matching = hall_extend(list(range(n)), dict(enumerate(lists)))
    assert (by_matching is None) == (find_coloring(complete_graph(n), L) is None)


def test_lemma_p4_passes():
    report = verify_lemma_p4()
    assert report.result is Verdict.PASS
    assert report.profile == P4_PROFILE
    assert report.assignments_checked == 673
    assert report.counterexample is None


def test_lemma_p4_parallel_checks_the_same_stream():
    assert verify_lemma_p4(jobs=2).assignments_checked == 673


def test_lemma_p4_with_single_colors_fails_on_first_assignment():
    report = verify_lemma_p4(profile=(1, 1, 1, 1))
    assert report.result is Verdict.FAIL
    assert report.counterexample == {"v1": [0], "v2": [0], "v3": [0], "v4": [0]}


def test_exhaust_rejects_wrong_profile_length():
    with pytest.raises(ValueError):
        exhaust(square(path_graph(4)), (2, 2))


def test_sample_is_deterministic():
    g = square(path_graph(4))
    a = sample(g, P4_PROFILE, n=300, seed=3)
    b = sample(g, P4_PROFILE, n=300, seed=3, jobs=2)
    assert a.checked == b.checked == 300
    assert a.witness is None and b.witness is None


def test_sample_finds_uncolorable_single_color_lists():
    outcome = sample(complete_graph(3), (1, 1, 1), n=50, seed=1, palette=1)
    assert outcome.witness == (1, 1, 1)


def test_sample_palette_follows_profile():
    # палитра max(профиль) даёт на K3 списки {0,1} у всех трёх вершин
    outcome = sample(complete_graph(3), (2, 2, 2), n=50, seed=1)
    assert outcome.witness is not None
    assert all(mask.bit_count() == 2 and mask < 1 << 4 for mask in outcome.witness)


def test_j2_necessity_witness_is_uncolorable(fixtures_dir):
    j2 = catalog.get("J2")
    data = json.loads((fixtures_dir / "j2_necessity_witness.json").read_text(encoding="utf-8"))
    L = ListAssignment(tuple(frozenset(data[label]) for label in j2.labels))
    assert L.matches(SizeProfile((2, 4, 4, 3, 2, 2)))
    assert J2_EQUAL(L.masks())
    assert find_coloring(square(j2.graph), L) is None


def test_j2_unknown_condition():
    with pytest.raises(ValueError):
        verify_lemma_j2(3)


@pytest.mark.slow
def test_lemma_j1_passes():
    report = verify_lemma_j1(jobs=4)
    assert report.result is Verdict.PASS
    assert report.assignments_checked == 274_392


@pytest.mark.slow
@pytest.mark.parametrize("condition", [1, 2])
def test_lemma_j2_passes(condition):
    report = verify_lemma_j2(condition, jobs=4)
    assert report.result is Verdict.PASS
    if condition == 1:
        assert report.filter == "L(v1) != L(v5)"


@pytest.mark.slow
def test_j2_condition_is_necessary():
    report = verify_lemma_j2_necessity(jobs=4)
    assert report.result is Verdict.FAIL
    j2 = catalog.get("J2")
    L = ListAssignment(tuple(frozenset(report.counterexample[label]) for label in j2.labels))
    assert find_coloring(square(j2.graph), L) is None
