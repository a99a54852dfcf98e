from __future__ import annotations

import re
import xml.etree.ElementTree as ET

import pytest

from canondraw.errors import WitnessMismatchError
from canondraw.render import metadata_crossings, plan, render_svg
from canondraw.templates import CanonicalSpec, Template, canonical_drawing, is_realizable

GAMMA5 = Template.from_lists(
    [((3, 2), (4, 5)), ((), (3, 1, 5, 4)), ((1, 2), (5, 4)), ((2,), (3, 5, 1)), ((3, 1, 4), (2,))]
)
TWO = Template.from_lists([((2,), ()), ((1,), ())])


def witness_of(t):
    ok, w = is_realizable(t, witness=True)
    assert ok
    return w


def test_gamma5_figure():
    w = witness_of(GAMMA5)
    spec = CanonicalSpec(GAMMA5, 3)
    svg = render_svg(spec, w)
    root = ET.fromstring(svg.split("\n", 1)[1].split("\n", 1)[1])
    ns = {"s": "http://www.w3.org/2000/svg"}
    assert len(root.findall(".//s:rect", ns)) == 5
    corridors = {re.search(r"c(\d+-\d+)", p.get("class")).group(1) for p in root.findall(".//s:polyline", ns)}
    assert len(corridors) == 10
    assert len(root.findall(".//s:polyline", ns)) == 10 * 9
    assert len(root.findall(".//s:circle", ns)) == 15


def test_metadata_matches_construction():
    w = witness_of(GAMMA5)
    spec = CanonicalSpec(GAMMA5, 2)
    svg = render_svg(spec, w)
    assert metadata_crossings(svg) == set(canonical_drawing(spec, witness=w).crossing_pairs)


def test_attachment_sides():
    w = witness_of(GAMMA5)
    rp = plan(CanonicalSpec(GAMMA5, 3), w)
    assert rp.top[1] == [3, 2]
    assert rp.bottom[1] == [5, 4]
    xs = [rp.vertices[f"1({k})"][0] for k in (3, 2, 1)]
    assert xs == sorted(xs)


def test_single_vertex_boxes_are_points():
    rp = plan(CanonicalSpec(GAMMA5, 1), witness_of(GAMMA5))
    assert all(b[2] == 0 and b[3] == 0 for b in rp.boxes.values())


def test_two_class_figure():
    svg = render_svg(CanonicalSpec(TWO, 4), witness_of(TWO))
    assert svg.count("<polyline") == 16


def test_witness_mismatch():
    w = witness_of(GAMMA5)
    other = Template.from_lists(
        [((2, 3), (4, 5)), ((), (3, 1, 5, 4)), ((1, 2), (5, 4)), ((2,), (3, 5, 1)), ((3, 1, 4), (2,))]
    )
    with pytest.raises(WitnessMismatchError):
        render_svg(CanonicalSpec(other, 2), w)
