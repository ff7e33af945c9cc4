"""Заряды, правило (R) и аудит разгрузки."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.boundary import t_of
from services.discharge import (
    EULER_TOTAL,
    apply_rule_R,
    audit,
    face_boundary,
    face_table,
    initial_charges,
)
from services.generators import (
    cycle_embedding,
    glued_triangles_face,
    hexagonal_prism,
    random_stacked_triangulation,
    spoked_triangle,
)
from services.graph import EmbeddingError, Graph, PlaneGraph
from utils.report import Verdict

CORPUS = [cycle_embedding(9), hexagonal_prism(), spoked_triangle(), glued_triangles_face()]


@pytest.mark.parametrize("pg", CORPUS)
def test_initial_total_is_minus_twelve(pg):
    assert initial_charges(pg).total() == EULER_TOTAL


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=3, max_value=14), st.integers(min_value=0, max_value=2**32))
def test_triangulations_pass_audit(n, seed):
    report = audit(random_stacked_triangulation(n, seed))
    assert report.verdict is Verdict.PASS
    assert report.total_initial == report.total_final == EULER_TOTAL
    assert report.transfers == 0


def test_c9_charges_and_rule():
    pg = cycle_embedding(9)
    initial = initial_charges(pg)
    assert set(initial.vertex_charge.values()) == {Fraction(-2)}
    assert sorted(initial.face_charge.values()) == [Fraction(3), Fraction(3)]
    final = apply_rule_R(pg, initial)
    assert len(final.transfers) == 18
    assert set(final.vertex_charge.values()) == {Fraction(0)}
    assert sorted(final.face_charge.values()) == [Fraction(-6), Fraction(-6)]
    assert initial.vertex_charge[0] == -2


def test_c9_audit_excuses_faces_with_adjacent_two_vertices():
    report = audit(cycle_embedding(9))
    assert report.verdict is Verdict.PASS
    assert report.negatives == []
    assert len(report.excused) == 2


def test_prism_has_no_transfers():
    pg = hexagonal_prism()
    initial = initial_charges(pg)
    final = apply_rule_R(pg, initial)
    assert final.transfers == []
    assert final.face_charge == initial.face_charge
    report = audit(pg)
    assert report.verdict is Verdict.PASS
    assert all(row["length"] == 4 for row in report.excused)


def test_triangle_surrounded_by_big_faces_is_paid_off():
    pg = spoked_triangle()
    table = face_table(pg)
    final = apply_rule_R(pg, initial_charges(pg, table), table)
    (triangle,) = [f for f in range(len(table.walks)) if table.length(f) == 3]
    assert final.face_charge[triangle] == 0


def test_glued_triangles_fail_on_the_inner_face():
    report = audit(glued_triangles_face())
    assert report.verdict is Verdict.FAIL
    (row,) = report.negatives
    assert row["length"] == 9
    assert row["t"] == 5 and row["d_minus_6"] == 3
    assert row["charge"] == "-2"
    assert report.t_mismatches == []


def test_face_boundary_of_glued_inner_face():
    pg = glued_triangles_face()
    table = face_table(pg)
    (inner,) = [f for f in range(len(table.walks)) if set(table.vertices(f)) == set(range(9))]
    b = face_boundary(pg, inner, table)
    assert b is not None
    assert t_of(b) == 5
    assert b.tokens().count("T") == 4


def test_disconnected_embedding_rejected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    pg = PlaneGraph(g, ((1,), (0,), (3,), (2,)))
    with pytest.raises(EmbeddingError):
        audit(pg)


def test_edgeless_graph_rejected():
    with pytest.raises(EmbeddingError):
        audit(PlaneGraph(Graph(1, frozenset()), ((),)))


def test_report_serializes_fractions():
    data = audit(glued_triangles_face()).to_dict()
    assert data["total_initial"] == "-12"
    assert data["result"] == "FAIL"
