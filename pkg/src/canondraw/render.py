"""Schematic SVG figures of canonical drawings.

The planarized witness of the class-level drawing is laid out with a
barycentric (Tutte) embedding: the longest face goes on a circle and every
other node sits at the average of its neighbours.  Each class node becomes a
box holding ``i(n), ..., i(1)`` left to right; each witness edge becomes a
corridor of ``n^2`` strands attached to the top of the box for plus classes
(left to right) and to the bottom for minus classes (right to left).

The geometry is schematic.  The authoritative crossing list travels in the
SVG ``<metadata>`` block and comes from the combinatorial construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .errors import WitnessMismatchError
from .realizer import PlanarizedWitness, check_witness
from .templates import CanonicalSpec, canonical_drawing, rotation_system_of

CANVAS = 800.0
MARGIN = 60.0
RENDER_VERSION = "1"


@dataclass
class RenderPlan:
    boxes: dict = field(default_factory=dict)  # class -> (x, y, w, h)
    corridors: dict = field(default_factory=dict)  # (i, j) -> [(x, y), ...]
    strand_offsets: dict = field(default_factory=dict)  # (i, j) -> [offset, ...]
    top: dict = field(default_factory=dict)  # class -> corridor classes, left to right
    bottom: dict = field(default_factory=dict)  # class -> corridor classes, left to right
    vertices: dict = field(default_factory=dict)  # vertex name -> (x, y)


def tutte_layout(w: PlanarizedWitness) -> dict:
    nodes = list(w.nodes)
    faces = w.faces()
    if not faces:
        return {v: (0.0, 0.0) for v in nodes}
    outer = max(faces, key=len)
    ring = []
    for t, _ in outer:
        if t not in ring:
            ring.append(t)
    pos = {}
    for k, v in enumerate(ring):
        ang = 2 * np.pi * k / len(ring)
        pos[v] = (float(np.cos(ang)), float(-np.sin(ang)))
    inner = [v for v in nodes if v not in pos]
    if inner:
        idx = {v: k for k, v in enumerate(inner)}
        L = np.zeros((len(inner), len(inner)))
        rhs = np.zeros((len(inner), 2))
        for v in inner:
            r = idx[v]
            nb = list(w.rotation[v])
            L[r, r] = len(nb)
            for u in nb:
                if u in idx:
                    L[r, idx[u]] -= 1
                else:
                    rhs[r] += pos[u]
        sol = np.linalg.lstsq(L, rhs, rcond=None)[0]
        for v in inner:
            pos[v] = (float(sol[idx[v], 0]), float(sol[idx[v], 1]))
    return pos


def _to_canvas(p):
    scale = (CANVAS - 2 * MARGIN) / 2
    return (MARGIN + (p[0] + 1) * scale, MARGIN + (p[1] + 1) * scale)


def plan(spec: CanonicalSpec, w: PlanarizedWitness) -> RenderPlan:
    t, n = spec.template, spec.n
    problems = check_witness(w, rotation_system_of(t))
    if problems:
        raise WitnessMismatchError("; ".join(problems[:3]))
    raw = tutte_layout(w)
    pos = {v: _to_canvas(p) for v, p in raw.items()}
    rp = RenderPlan()
    width = 0.0 if n == 1 else 18.0 * n
    height = 0.0 if n == 1 else 24.0
    for i in range(1, t.m + 1):
        x, y = pos[str(i)]
        rp.boxes[i] = (x - width / 2, y - height / 2, width, height)
        rp.top[i] = list(t.plus[i - 1])
        rp.bottom[i] = list(reversed(t.minus[i - 1]))
        for a in range(1, n + 1):
            # i(n), ..., i(1) from left to right
            frac = 0.5 if n == 1 else (n - a + 0.5) / n
            rp.vertices[f"{i}({a})"] = (x - width / 2 + frac * width, y)

    def port(i: int, j: int):
        bx, by, bw, bh = rp.boxes[i]
        if j in rp.top[i]:
            row, yy = rp.top[i], by
        else:
            row, yy = rp.bottom[i], by + bh
        k = row.index(j)
        return (bx + (k + 0.5) / len(row) * bw, yy)

    for e, path in w.segment_map.items():
        i, j = int(e[0]), int(e[1])
        pts = [port(i, j)] + [pos[x] for x in path[1:-1]] + [port(j, i)]
        rp.corridors[(i, j)] = pts
        spread = 1.5
        rp.strand_offsets[(i, j)] = [
            (k - (n * n - 1) / 2) * spread for k in range(n * n)
        ]
    return rp


def _offset_polyline(pts, off):
    arr = np.asarray(pts, dtype=float)
    if len(arr) < 2:
        return arr
    out = []
    for k in range(len(arr)):
        a = arr[max(k - 1, 0)]
        b = arr[min(k + 1, len(arr) - 1)]
        d = b - a
        norm = np.hypot(*d) or 1.0
        nrm = np.array([-d[1], d[0]]) / norm
        out.append(arr[k] + off * nrm)
    return np.asarray(out)


def render_svg(spec: CanonicalSpec, witness: PlanarizedWitness) -> str:
    rp = plan(spec, witness)
    d = canonical_drawing(spec, witness=witness)
    meta = json.dumps(
        {"crossings": sorted([list(e), list(f)] for e, f in d.crossing_pairs)}, sort_keys=True
    )
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<!-- canondraw render {RENDER_VERSION} -->",
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS:.0f}" '
        f'height="{CANVAS:.0f}" viewBox="0 0 {CANVAS:.0f} {CANVAS:.0f}">',
        f"<metadata>{escape(meta)}</metadata>",
        '<g id="corridors" fill="none">',
    ]
    for (i, j), pts in sorted(rp.corridors.items()):
        for off in rp.strand_offsets[(i, j)]:
            line = _offset_polyline(pts, off)
            coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in line)
            out.append(f'<polyline class="strand c{i}-{j}" points="{coords}" stroke="#555" stroke-width="0.6"/>')
    out.append("</g>")
    out.append('<g id="boxes">')
    for i, (x, y, w, h) in sorted(rp.boxes.items()):
        out.append(
            f'<rect id="box{i}" x="{x:.1f}" y="{y:.1f}" width="{w:.1f}" height="{h:.1f}" '
            'fill="#fff" stroke="#000"/>'
        )
        out.append(f'<text x="{x + w + 4:.1f}" y="{y - 4:.1f}" font-size="14">{i}</text>')
    out.append("</g>")
    out.append('<g id="vertices">')
    for v, (x, y) in sorted(rp.vertices.items()):
        out.append(f'<circle class="vertex" id="v{escape(v)}" cx="{x:.1f}" cy="{y:.1f}" r="2.5"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def metadata_crossings(svg: str) -> set:
    """Crossing pairs stored in an SVG produced by :func:`render_svg`."""
    import re
    from html import unescape

    m = re.search(r"<metadata>(.*?)</metadata>", svg, re.S)
    if m is None:
        raise ValueError("no metadata block")
    data = json.loads(unescape(m.group(1)))
    return {tuple(tuple(x) for x in pair) for pair in data["crossings"]}
