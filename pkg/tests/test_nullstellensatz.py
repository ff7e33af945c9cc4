"""Коэффициенты многочлена графа и сертификат Nullstellensatz."""

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from services import catalog
from services.assignments import SizeProfile
from services.generators import complete_graph, path_graph
from services.graph import Graph
from services.nullstellensatz import (
    CappedPolynomial,
    GraphPolynomial,
    certify,
    certify_choosable,
    expand,
    graph_polynomial,
    monomial_coefficient,
)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=5))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    return Graph.from_edges(n, edges)


def _sympy_terms(g):
    xs = sympy.symbols(f"x0:{g.n}")
    expr = sympy.Integer(1)
    for u, v in g.sorted_edges():
        expr *= xs[u] - xs[v]
    return sympy.Poly(sympy.expand(expr), *xs).terms()


def test_single_edge():
    p = graph_polynomial(path_graph(2))
    assert monomial_coefficient(p, (1, 0)) == 1
    assert monomial_coefficient(p, (0, 1)) == -1


def test_triangle_vandermonde():
    p = graph_polynomial(complete_graph(3))
    # (x0-x1)(x0-x2)(x1-x2)
    assert monomial_coefficient(p, (2, 1, 0)) == 1
    assert monomial_coefficient(p, (1, 1, 1)) == 0
    assert monomial_coefficient(p, (0, 1, 2)) == -1


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_coefficients_match_symbolic_expansion(g):
    p = graph_polynomial(g)
    for monomial, coef in _sympy_terms(g):
        assert monomial_coefficient(p, monomial) == coef
        assert monomial_coefficient(p, monomial, reorder=True) == coef


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.data())
def test_absent_monomials_have_zero_coefficient(g, data):
    present = {tuple(m) for m, _ in _sympy_terms(g)}
    target = tuple(data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n)))
    if target not in present:
        assert monomial_coefficient(graph_polynomial(g), target) == 0


def test_wrong_degree_gives_zero():
    p = graph_polynomial(complete_graph(3))
    exp = expand(p, (1, 1, 0))
    assert exp.coefficient == 0 and exp.term_peak == 0


def test_target_length_checked():
    with pytest.raises(ValueError):
        expand(graph_polynomial(path_graph(3)), (1, 1))


def test_factors_must_be_ordered_edges():
    with pytest.raises(ValueError):
        GraphPolynomial(2, ((1, 0),))


def test_capped_polynomial_packing():
    poly = CappedPolynomial((2, 0, 3))
    key = poly.pack((1, 0, 3))
    assert poly.unpack(key) == (1, 0, 3)
    with pytest.raises(ValueError):
        poly.pack((3, 0, 0))
    assert poly.coefficient((0, 0, 0)) == 1


def test_capped_multiplication_drops_terms_over_caps():
    poly = CappedPolynomial((1, 0))
    poly.multiply_binomial(0, 1)
    assert dict(poly.items()) == {(1, 0): 1}


@pytest.mark.parametrize("name", ["F2", "F3"])
def test_published_coefficients(name):
    c = catalog.get(name)
    p = graph_polynomial(catalog.colorability_graph(c))
    assert monomial_coefficient(p, c.target_monomial) == c.expected_coefficient


@pytest.mark.slow
@pytest.mark.parametrize("name", ["F5", "F9", "F10", "F12"])
def test_published_coefficients_large(name):
    c = catalog.get(name)
    p = graph_polynomial(catalog.colorability_graph(c))
    assert monomial_coefficient(p, c.target_monomial) == c.expected_coefficient
    assert monomial_coefficient(p, c.target_monomial, reorder=True) == c.expected_coefficient


def test_certificate_for_f2():
    c = catalog.get("F2")
    g = catalog.colorability_graph(c)
    cert = certify(g, SizeProfile(c.figure_profile), c.target_monomial)
    assert cert.certified and cert.dominated
    assert cert.coefficient == 2
    assert cert.short == []


def test_certificate_requires_dominating_profile():
    g = complete_graph(3)
    assert certify_choosable(g, SizeProfile((3, 2, 1)), (2, 1, 0))
    cert = certify(g, SizeProfile((2, 2, 1)), (2, 1, 0))
    assert not cert.certified
    assert cert.short == [0]
    with pytest.raises(ValueError):
        certify(g, SizeProfile((1, 1)), (1, 0))


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.randoms(use_true_random=False))
def test_factor_order_does_not_change_coefficients(g, rnd):
    p = graph_polynomial(g)
    shuffled = list(p.factors)
    rnd.shuffle(shuffled)
    for monomial, coef in _sympy_terms(g):
        assert expand(p, monomial, order=shuffled).coefficient == coef


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.randoms(use_true_random=False))
def test_relabeling_flips_sign_by_reversed_edges(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    relabeled = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    reversed_edges = sum(1 for u, v in g.edges if (perm[u] > perm[v]) != (u > v))
    sign = -1 if reversed_edges % 2 else 1
    p, q = graph_polynomial(g), graph_polynomial(relabeled)
    for monomial, coef in _sympy_terms(g):
        moved = [0] * g.n
        for v, e in enumerate(monomial):
            moved[perm[v]] = e
        assert monomial_coefficient(q, moved) == sign * coef
    assert monomial_coefficient(p, [0] * g.n) == 0


def test_explicit_order_is_validated():
    p = graph_polynomial(complete_graph(3))
    with pytest.raises(ValueError):
        expand(p, (2, 1, 0), order=[(0, 1), (0, 2)])
    with pytest.raises(ValueError):
        expand(p, (2, 1, 0), reorder=True, order=list(p.factors))
    assert expand(p, (2, 1, 0), order=[(1, 2), (0, 2), (0, 1)]).coefficient == 1
