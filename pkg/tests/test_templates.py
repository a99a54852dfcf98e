from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canondraw.combinatorics import CyclicOrder
from canondraw.drawing import (
    AbstractDrawing,
    OnePageDrawing,
    bipartite_edges,
    class_perm,
    from_onepage,
    induce_vertices,
    signed_order,
    weak_iso,
)
from canondraw.errors import InvalidTemplateError, UnrealizableTemplateError
from canondraw.realizer import crossings_of_witness
from canondraw.templates import (
    CanonicalSpec,
    NotCanonical,
    Template,
    canonical_drawing,
    crosses,
    induced_orders,
    is_realizable,
    reverse_class,
    rotation_system_of,
    sign_of,
    template_of,
    verify_canonical,
)

GAMMA5 = Template.from_lists(
    [((3, 2), (4, 5)), ((), (3, 1, 5, 4)), ((1, 2), (5, 4)), ((2,), (3, 5, 1)), ((3, 1, 4), (2,))]
)
OBS21 = Template.from_lists([((2, 3, 4), ()), ((3, 4, 1), ()), ((4, 1, 2), ()), ((1, 3, 2), ())])
TWO = Template.from_lists([((2,), ()), ((1,), ())])


def P(i, n=3):
    return class_perm(i, n)


def R(i, n=3):
    return class_perm(i, n).reversed()


# ---------------------------------------------------------------------------
# Sign functions and orders
# ---------------------------------------------------------------------------


def test_sign_of_gamma5():
    s = sign_of(GAMMA5)
    assert s.plus(1) == {2, 3} and s.minus(1) == {4, 5}
    assert s.plus(2) == frozenset()


def test_sign_of_non_realizable_template():
    s = sign_of(OBS21)
    assert all(s(j, i) == 1 for i in range(1, 5) for j in range(1, 5) if i != j)


def test_induced_orders_gamma5():
    spec = CanonicalSpec(GAMMA5, 3)
    assert induced_orders(spec, 1) == (CyclicOrder(P(1) + P(3) + R(2)), CyclicOrder(R(1) + R(4) + P(5)))
    assert induced_orders(spec, 2) == (None, CyclicOrder(R(2) + P(3) + P(1) + R(5) + P(4)))
    assert induced_orders(spec, 3) == (CyclicOrder(P(3) + P(1) + R(2)), CyclicOrder(R(3) + P(5) + R(4)))
    assert induced_orders(spec, 4) == (CyclicOrder(P(4) + R(2)), CyclicOrder(R(4) + R(3) + P(5) + R(1)))
    assert induced_orders(spec, 5) == (CyclicOrder(P(5) + R(3) + R(1) + R(4)), CyclicOrder(R(5) + R(2)))


def test_induced_order_single_plus_class():
    assert induced_orders(CanonicalSpec(TWO, 2), 1) == (CyclicOrder(P(1, 2) + P(2, 2)), None)


def test_rotation_system_of():
    rs = rotation_system_of(OBS21)
    assert rs.rotation["4"] == CyclicOrder("132")
    assert rotation_system_of(GAMMA5).rotation["1"] == CyclicOrder("3245")
    two = rotation_system_of(TWO)
    assert two.rotation["1"] == CyclicOrder("2") and two.rotation["2"] == CyclicOrder("1")


def test_invalid_templates():
    with pytest.raises(InvalidTemplateError):
        Template.from_lists([((2,), (2,)), ((1,), ())])
    with pytest.raises(InvalidTemplateError):
        Template.from_lists([((2, 3), ()), ((1,), ())])
    with pytest.raises(InvalidTemplateError):
        sign_of("not a template")


def test_realizability():
    assert is_realizable(GAMMA5)
    assert not is_realizable(OBS21)
    assert is_realizable(TWO)
    with pytest.raises(UnrealizableTemplateError):
        canonical_drawing(CanonicalSpec(OBS21, 2))


# ---------------------------------------------------------------------------
# Crossing predicate
# ---------------------------------------------------------------------------


def test_opposite_sides_never_cross():
    spec = CanonicalSpec(GAMMA5, 3)
    assert not crosses(spec, ("1(1)", "3(2)"), ("1(2)", "4(1)"))


def test_adjacent_edges_never_cross():
    spec = CanonicalSpec(GAMMA5, 3)
    assert not crosses(spec, ("1(1)", "3(2)"), ("1(1)", "2(1)"))


def test_crosses_is_symmetric_and_matches_drawing():
    spec = CanonicalSpec(GAMMA5, 2)
    d = canonical_drawing(spec)
    es = sorted(d.edges)
    for e, f in combinations(es, 2):
        assert crosses(spec, e, f) == crosses(spec, f, e) == d.crosses(e, f)


def test_class_one_edges_are_two_onepage_drawings():
    spec = CanonicalSpec(GAMMA5, 3)
    d = canonical_drawing(spec)
    up, down = induced_orders(spec, 1)
    E_up = bipartite_edges(P(1), P(3)) | bipartite_edges(P(1), P(2))
    E_down = bipartite_edges(P(1), P(4)) | bipartite_edges(P(1), P(5))
    ours = {k for k in d.crossing_pairs if k[0] in E_up | E_down and k[1] in E_up | E_down}
    page_up = set(from_onepage(OnePageDrawing(up, E_up)).crossing_pairs)
    page_down = set(from_onepage(OnePageDrawing(down, E_down)).crossing_pairs)
    assert ours == page_up | page_down


# ---------------------------------------------------------------------------
# Canonical drawings
# ---------------------------------------------------------------------------


def test_gamma5_verifies():
    d = canonical_drawing(CanonicalSpec(GAMMA5, 3))
    assert verify_canonical(d, d.classes, GAMMA5) == []


def test_swapped_sides_fail_verification():
    d = canonical_drawing(CanonicalSpec(GAMMA5, 3))
    plus, minus = list(GAMMA5.plus), list(GAMMA5.minus)
    plus[0], minus[0] = minus[0], plus[0]
    assert verify_canonical(d, d.classes, Template(tuple(plus), tuple(minus)))


def test_two_class_template_gives_b4():
    d = canonical_drawing(CanonicalSpec(TWO, 4))
    b, w = P(1, 4), P(2, 4)
    b4 = from_onepage(OnePageDrawing(signed_order((1, b), (-1, w)), bipartite_edges(b, w)), [b, w])
    phi = {v: v for v in b}
    phi.update({w[k]: w[3 - k] for k in range(4)})
    assert weak_iso(d, b4, phi)


def test_single_vertex_classes_follow_rotation_system():
    spec = CanonicalSpec(GAMMA5, 1)
    d = canonical_drawing(spec)
    rs = rotation_system_of(GAMMA5)
    for i in range(1, 6):
        want = CyclicOrder(f"{j}(1)" for j in rs.rotation[str(i)].items)
        assert d.vertex_rotations[f"{i}(1)"] == want
    assert verify_canonical(d, d.classes, GAMMA5) == []


def test_restriction_coherence():
    big = canonical_drawing(CanonicalSpec(GAMMA5, 3))
    small = canonical_drawing(CanonicalSpec(GAMMA5, 2))
    sub = induce_vertices(big, [v for c in big.classes for v in c[:2]])
    assert sub.crossing_pairs == small.crossing_pairs


def test_seeds_give_weakly_isomorphic_drawings():
    a = canonical_drawing(CanonicalSpec(GAMMA5, 2), seed=1)
    b = canonical_drawing(CanonicalSpec(GAMMA5, 2), seed=7)
    assert weak_iso(a, b, {v: v for v in a.vertices})


def test_witness_rotations_used_for_four_class_crossings():
    ok, w = is_realizable(GAMMA5, witness=True)
    d = canonical_drawing(CanonicalSpec(GAMMA5, 1), witness=w)
    k5 = crossings_of_witness(w)
    relabel = {str(i): f"{i}(1)" for i in range(1, 6)}
    assert d.crossing_data() == k5.relabelled(relabel).crossing_data()
    assert ok


# ---------------------------------------------------------------------------
# Reading templates back
# ---------------------------------------------------------------------------


def test_template_of_round_trip():
    d = canonical_drawing(CanonicalSpec(GAMMA5, 3))
    assert template_of(d, d.classes) == GAMMA5


def test_template_of_b4_with_reversed_class():
    n = 4
    b, w = P(1, n), P(2, n)
    b4 = from_onepage(OnePageDrawing(signed_order((1, b), (-1, w)), bipartite_edges(b, w)), [b, w])
    t = template_of(b4, [b, w])
    assert t == Template.from_lists([((2,), ()), ((), (1,))])
    assert verify_canonical(b4, [b, w], t) == []


def test_template_of_rejects_non_canonical():
    d = canonical_drawing(CanonicalSpec(GAMMA5, 2))
    crs = tuple(c for c in d.crossings if c.key != min(d.crossing_pairs))
    damaged = AbstractDrawing(d.classes, d.edges, d.vertex_rotations, crs)
    assert isinstance(template_of(damaged, damaged.classes), NotCanonical)


def test_reversing_a_class_gives_the_same_drawing():
    n = 3
    d = canonical_drawing(CanonicalSpec(GAMMA5, n))
    for i in range(1, 6):
        t2 = reverse_class(GAMMA5, i)
        d2 = canonical_drawing(CanonicalSpec(t2, n))
        phi = {v: v for v in d.vertices}
        phi.update({f"{i}({k})": f"{i}({n + 1 - k})" for k in range(1, n + 1)})
        assert weak_iso(d, d2, phi)


@settings(max_examples=25, deadline=None)
@given(st.permutations([2, 3, 4]), st.integers(0, 3), st.integers(1, 3))
def test_random_m4_templates_round_trip(order, cut, n):
    rows = []
    rest = list(order)
    rows.append((tuple(rest[:cut]), tuple(rest[cut:])))
    for i in range(2, 5):
        others = [j for j in range(1, 5) if j != i]
        rows.append((tuple(others), ()))
    t = Template.from_lists(rows)
    if not is_realizable(t):
        return
    d = canonical_drawing(CanonicalSpec(t, n))
    assert verify_canonical(d, d.classes, t) == []
