from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canondraw.combinatorics import CyclicOrder
from canondraw.drawing import (
    AbstractDrawing,
    CrossingRecord,
    OnePageDrawing,
    bipartite_edges,
    class_perm,
    from_onepage,
    induce_edges,
    induce_vertices,
    is_natural_pair,
    is_rho_drawing,
    onepage_crossings,
    parse_vertex,
    rotation_at_vertex,
    signed_order,
    validate,
    weak_iso,
)
from canondraw.errors import NotABijectionError, NotAdjacentError, UnknownEdgeError, UnknownVertexError
from instances import MUTATIONS, mutate, onepage_bipartite, random_instance


# ---------------------------------------------------------------------------
# 1-page drawings
# ---------------------------------------------------------------------------


def test_vertex_names():
    assert class_perm(3, 2) == ("3(1)", "3(2)")
    assert parse_vertex("12(3)") == (12, 3)
    with pytest.raises(ValueError):
        parse_vertex("x")


def test_chords_cross_iff_interleaved():
    cr = onepage_crossings(CyclicOrder("abcd"), [("a", "c"), ("b", "d"), ("a", "b")])
    assert set(cr) == {(("a", "c"), ("b", "d"))}
    assert cr[(("a", "c"), ("b", "d"))] == CyclicOrder("abcd")


def test_onepage_missing_endpoint():
    with pytest.raises(UnknownVertexError):
        OnePageDrawing(CyclicOrder("abc"), [("a", "z")])


def test_onepage_vertex_rotation_follows_rho():
    d = from_onepage(OnePageDrawing(CyclicOrder("abcde"), [("a", "c"), ("a", "d"), ("a", "b")]))
    assert d.vertex_rotations["a"] == CyclicOrder("bcd")
    assert validate(d) == []


def test_natural_pair_on_ab_order():
    A, B = class_perm(1, 3), class_perm(2, 3)
    d = onepage_bipartite(A + B, A, B)
    assert is_natural_pair(d, A, B)
    assert is_rho_drawing(d, CyclicOrder(A + B), bipartite_edges(A, B))
    assert not is_rho_drawing(d, signed_order((1, A), (-1, B)), bipartite_edges(A, B))


def test_k22_in_ab_order_has_one_crossing():
    d = onepage_bipartite(["a", "a2", "b", "b2"], ["a", "a2"], ["b", "b2"])
    assert d.crossing_pairs == {(("a", "b"), ("a2", "b2"))}


# ---------------------------------------------------------------------------
# Natural pairs versus 1-page drawings
# ---------------------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(MUTATIONS))
def test_natural_pair_iff_ab_drawing(rng, kind):
    d, A, B = random_instance(rng)
    d = mutate(d, kind, rng)
    rho = CyclicOrder(A + B)
    assert is_natural_pair(d, A, B) == is_rho_drawing(d, rho, bipartite_edges(A, B))


# ---------------------------------------------------------------------------
# Subdrawings, weak isomorphism, validation
# ---------------------------------------------------------------------------


def test_induce_and_rotation_at_vertex():
    A, B = class_perm(1, 3), class_perm(2, 3)
    d = onepage_bipartite(A + B, A, B)
    sub = induce_vertices(d, ["1(1)", "1(2)", "2(1)", "2(2)"])
    assert len(sub.edges) == 4 and len(sub.crossings) == 1
    sub2 = induce_edges(d, [("1(1)", "2(1)"), ("1(2)", "2(2)")])
    assert len(sub2.crossings) == 1
    assert rotation_at_vertex(d, "1(1)", ["2(3)", "2(1)"]) == CyclicOrder(["2(1)", "2(3)"])
    with pytest.raises(NotAdjacentError):
        rotation_at_vertex(d, "1(1)", ["1(2)"])
    with pytest.raises(UnknownEdgeError):
        induce_edges(d, [("1(1)", "1(2)")])
    with pytest.raises(UnknownVertexError):
        induce_vertices(d, ["9(9)"])


def test_weak_iso():
    A, B = class_perm(1, 3), class_perm(2, 3)
    d = onepage_bipartite(A + B, A, B)
    ident = {v: v for v in d.vertices}
    assert weak_iso(d, d, ident)
    assert weak_iso(d, d.reflected(), ident)
    swap = dict(ident, **{"1(1)": "1(3)", "1(3)": "1(1)"})
    assert not weak_iso(d, d, swap)
    with pytest.raises(NotABijectionError):
        weak_iso(d, d, {v: "1(1)" for v in d.vertices})


def test_validate_catches_each_kind():
    base = AbstractDrawing(
        (("a", "d"), ("b", "c")),
        {("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")},
        {"a": CyclicOrder("bc"), "b": CyclicOrder("ad"), "c": CyclicOrder("ad"), "d": CyclicOrder("bc")},
    )
    assert validate(base) == []
    bad = AbstractDrawing(
        base.classes,
        base.edges | {("a", "d")},
        dict(base.vertex_rotations),
        (
            CrossingRecord(("a", "b"), ("c", "d"), CyclicOrder("abcd")),
            CrossingRecord(("a", "b"), ("a", "c"), CyclicOrder("abc")),
            CrossingRecord(("a", "c"), ("b", "x"), CyclicOrder("abcx")),
        ),
    )
    kinds = {v.kind for v in validate(bad)}
    assert {
        "same-class-edge",
        "malformed-vertex-rotation",
        "non-alternating-crossing",
        "adjacent-crossing",
        "unknown-edge",
    } <= kinds


def test_reflection_and_relabel_round_trip():
    A, B = class_perm(1, 2), class_perm(2, 2)
    d = onepage_bipartite(A + B, A, B)
    assert d.reflected().reflected() == d
    phi = {v: v.replace("1(", "5(") for v in d.vertices}
    back = {b: a for a, b in phi.items()}
    assert d.relabelled(phi).relabelled(back) == d
