"""Combinatorial simple drawings.

An :class:`AbstractDrawing` records what a drawing on the sphere looks like
up to the data the rest of the package needs: which edge pairs cross, the
clockwise rotation at every crossing, and the clockwise rotation of
neighbours at every vertex.  Nothing here checks that such a drawing exists
globally; see :mod:`canondraw.realizer` for that.

Vertices are strings.  Vertices of partite classes are named ``"i(k)"``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import NamedTuple

from .combinatorics import CyclicOrder, Permutation, concat
from .errors import (
    NotABijectionError,
    NotAdjacentError,
    UnknownEdgeError,
    UnknownVertexError,
)

Edge = tuple  # (u, v) with u < v
PairKey = tuple  # (e, f) with e < f

_VERTEX_RE = re.compile(r"^(\d+)\((\d+)\)$")


def vertex(class_index: int, position: int) -> str:
    return f"{class_index}({position})"


def parse_vertex(v: str) -> tuple[int, int]:
    m = _VERTEX_RE.match(v)
    if m is None:
        raise ValueError(f"not a class vertex name: {v!r}")
    return int(m.group(1)), int(m.group(2))


def class_perm(class_index: int, n: int) -> Permutation:
    """``<i(1), ..., i(n)>``."""
    return Permutation(vertex(class_index, k) for k in range(1, n + 1))


def edge(u, v) -> Edge:
    if u == v:
        raise ValueError(f"loop at {u!r}")
    return (u, v) if u < v else (v, u)


def pair_key(e: Edge, f: Edge) -> PairKey:
    return (e, f) if e < f else (f, e)


def independent(e: Edge, f: Edge) -> bool:
    return not set(e) & set(f)


@dataclass(frozen=True)
class CrossingRecord:
    edge_e: Edge
    edge_f: Edge
    rotation: CyclicOrder

    def __post_init__(self):
        e, f = edge(*self.edge_e), edge(*self.edge_f)
        if f < e:
            e, f = f, e
        object.__setattr__(self, "edge_e", e)
        object.__setattr__(self, "edge_f", f)
        if not isinstance(self.rotation, CyclicOrder):
            object.__setattr__(self, "rotation", CyclicOrder(self.rotation))

    @property
    def key(self) -> PairKey:
        return (self.edge_e, self.edge_f)


class Violation(NamedTuple):
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class AbstractDrawing:
    classes: tuple[Permutation, ...]
    edges: frozenset
    vertex_rotations: Mapping[str, CyclicOrder] = field(default_factory=dict)
    crossings: tuple[CrossingRecord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(Permutation(c) for c in self.classes))
        object.__setattr__(self, "edges", frozenset(edge(*e) for e in self.edges))
        rots = {
            v: r if isinstance(r, CyclicOrder) else CyclicOrder(r)
            for v, r in self.vertex_rotations.items()
        }
        object.__setattr__(self, "vertex_rotations", rots)
        crs = tuple(
            sorted(
                (c if isinstance(c, CrossingRecord) else CrossingRecord(*c) for c in self.crossings),
                key=lambda c: (c.key, c.rotation.items),
            )
        )
        object.__setattr__(self, "crossings", crs)

    # -- derived views ---------------------------------------------------

    @cached_property
    def vertices(self) -> tuple:
        return tuple(v for c in self.classes for v in c)

    @cached_property
    def class_of(self) -> dict:
        """Vertex -> 0-based class position."""
        return {v: i for i, c in enumerate(self.classes) for v in c}

    @cached_property
    def crossing_index(self) -> dict:
        out: dict = {}
        for c in self.crossings:
            out.setdefault(c.key, c)
        return out

    @cached_property
    def adjacency(self) -> dict:
        adj: dict = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return adj

    def crosses(self, e: Edge, f: Edge) -> bool:
        return pair_key(edge(*e), edge(*f)) in self.crossing_index

    def crossing_rotation(self, e: Edge, f: Edge) -> CyclicOrder | None:
        rec = self.crossing_index.get(pair_key(edge(*e), edge(*f)))
        return None if rec is None else rec.rotation

    @property
    def crossing_pairs(self) -> frozenset:
        return frozenset(self.crossing_index)

    def crossing_data(self) -> frozenset:
        """Crossing pairs together with their rotations."""
        return frozenset((k, c.rotation) for k, c in self.crossing_index.items())

    def reflected(self) -> AbstractDrawing:
        """Mirror image: every rotation reversed."""
        return AbstractDrawing(
            self.classes,
            self.edges,
            {v: r.reversed() for v, r in self.vertex_rotations.items()},
            tuple(CrossingRecord(c.edge_e, c.edge_f, c.rotation.reversed()) for c in self.crossings),
        )

    def relabelled(self, phi: Mapping) -> AbstractDrawing:
        return AbstractDrawing(
            tuple(Permutation(phi[v] for v in c) for c in self.classes),
            frozenset(edge(phi[u], phi[v]) for u, v in self.edges),
            {phi[v]: r.relabel(phi) for v, r in self.vertex_rotations.items()},
            tuple(
                CrossingRecord(
                    edge(*(phi[x] for x in c.edge_e)),
                    edge(*(phi[x] for x in c.edge_f)),
                    c.rotation.relabel(phi),
                )
                for c in self.crossings
            ),
        )


@dataclass(frozen=True)
class OnePageDrawing:
    bounding_order: CyclicOrder
    edges: frozenset

    def __post_init__(self):
        if not isinstance(self.bounding_order, CyclicOrder):
            object.__setattr__(self, "bounding_order", CyclicOrder(self.bounding_order))
        es = frozenset(edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", es)
        missing = {x for e in es for x in e} - set(self.bounding_order)
        if missing:
            raise UnknownVertexError(f"endpoints missing from bounding order: {sorted(missing)}")


# ---------------------------------------------------------------------------
# 1-page semantics
# ---------------------------------------------------------------------------


def onepage_crossings(rho: CyclicOrder, edges: Iterable[Edge]) -> dict:
    """Crossing pairs of a ``rho``-drawing, mapped to their rotations.

    Independent chords cross iff their endpoints alternate along ``rho``; the
    rotation at the crossing is the cyclic order of the four endpoints.
    """
    pos = rho.positions
    es = sorted(edge(*e) for e in edges)
    out = {}
    for e, f in combinations(es, 2):
        if not independent(e, f):
            continue
        a, b = sorted((pos[e[0]], pos[e[1]]))
        x, y = pos[f[0]], pos[f[1]]
        if (a < x < b) != (a < y < b):
            quad = sorted((pos[e[0]], pos[e[1]], x, y))
            out[(e, f)] = CyclicOrder(rho.items[k] for k in quad)
    return out


def from_onepage(p: OnePageDrawing, classes: Iterable[Iterable[str]] | None = None) -> AbstractDrawing:
    rho = p.bounding_order
    if classes is None:
        classes = [(v,) for v in rho]
    adj: dict = {v: set() for v in rho}
    for u, v in p.edges:
        adj[u].add(v)
        adj[v].add(u)
    rotations = {w: CyclicOrder(x for x in rho.after(w) if x in adj[w]) for w in rho}
    crossings = [CrossingRecord(e, f, r) for (e, f), r in onepage_crossings(rho, p.edges).items()]
    return AbstractDrawing(tuple(classes), p.edges, rotations, tuple(crossings))


def is_rho_drawing(d: AbstractDrawing, rho: CyclicOrder, E: Iterable[Edge]) -> bool:
    """Whether ``d[E]`` has exactly the crossings of a ``rho``-drawing."""
    E = {edge(*e) for e in E}
    expected = onepage_crossings(rho, E)
    actual = {
        c.key: c.rotation
        for c in d.crossing_index.values()
        if c.edge_e in E and c.edge_f in E
    }
    return expected == actual


def bipartite_edges(A: Iterable[str], B: Iterable[str]) -> frozenset:
    B = tuple(B)
    return frozenset(edge(a, b) for a in A for b in B)


def is_natural_pair(d: AbstractDrawing, A, B) -> bool:
    A, B = tuple(A), tuple(B)
    for a, a2 in combinations(A, 2):
        for b, b2 in combinations(B, 2):
            rec = d.crossing_index.get(pair_key(edge(a, b), edge(a2, b2)))
            if rec is None or rec.rotation != CyclicOrder((a, a2, b, b2)):
                return False
    return True


def rotation_at_vertex(d: AbstractDrawing, v: str, U: Iterable[str]) -> CyclicOrder:
    U = set(U)
    stray = U - d.adjacency.get(v, set())
    if stray:
        raise NotAdjacentError(f"{v} is not adjacent to {sorted(stray)}")
    return d.vertex_rotations[v].restrict(U)


# ---------------------------------------------------------------------------
# Subdrawings
# ---------------------------------------------------------------------------


def _restrict(d: AbstractDrawing, keep_vertices: set, keep_edges: frozenset) -> AbstractDrawing:
    classes = tuple(c.restrict(keep_vertices) for c in d.classes)
    nbrs: dict = {v: set() for v in keep_vertices}
    for u, v in keep_edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    rotations = {
        v: r.restrict(nbrs[v]) for v, r in d.vertex_rotations.items() if v in keep_vertices
    }
    crossings = tuple(
        c for c in d.crossings if c.edge_e in keep_edges and c.edge_f in keep_edges
    )
    return AbstractDrawing(classes, keep_edges, rotations, crossings)


def induce_edges(d: AbstractDrawing, E: Iterable[Edge]) -> AbstractDrawing:
    E = frozenset(edge(*e) for e in E)
    unknown = E - d.edges
    if unknown:
        raise UnknownEdgeError(f"not edges of the drawing: {sorted(unknown)[:5]}")
    keep = {x for e in E for x in e}
    return _restrict(d, keep, E)


def induce_vertices(d: AbstractDrawing, U: Iterable[str]) -> AbstractDrawing:
    U = set(U)
    unknown = U - set(d.vertices)
    if unknown:
        raise UnknownVertexError(f"not vertices of the drawing: {sorted(unknown)[:5]}")
    E = frozenset(e for e in d.edges if e[0] in U and e[1] in U)
    return _restrict(d, U, E)


# ---------------------------------------------------------------------------
# Weak isomorphism and validation
# ---------------------------------------------------------------------------


def weak_iso(d1: AbstractDrawing, d2: AbstractDrawing, phi: Mapping) -> bool:
    if set(phi) != set(d1.vertices) or set(phi.values()) != set(d2.vertices):
        raise NotABijectionError("phi must map the vertices of d1 onto those of d2")
    if len(set(phi.values())) != len(phi):
        raise NotABijectionError("phi is not injective")
    mapped_edges = {edge(phi[u], phi[v]) for u, v in d1.edges}
    if mapped_edges != d2.edges:
        return False
    mapped = {
        pair_key(edge(phi[e[0]], phi[e[1]]), edge(phi[f[0]], phi[f[1]]))
        for e, f in d1.crossing_index
    }
    return mapped == set(d2.crossing_index)


def validate(d: AbstractDrawing) -> list[Violation]:
    """Check the local simplicity axioms; returns one entry per violation."""
    out: list[Violation] = []
    verts = set(d.vertices)
    for u, v in sorted(d.edges):
        missing = [x for x in (u, v) if x not in verts]
        if missing:
            out.append(Violation("unknown-vertex", f"edge {u}-{v} uses {missing}"))
        elif d.class_of[u] == d.class_of[v]:
            out.append(Violation("same-class-edge", f"edge {u}-{v} inside one class"))

    adj = d.adjacency
    for v in sorted(verts):
        want = adj.get(v, set())
        rot = d.vertex_rotations.get(v)
        have = set(rot) if rot is not None else set()
        if rot is None and want:
            out.append(Violation("malformed-vertex-rotation", f"no rotation at {v}"))
        elif have != want:
            out.append(
                Violation(
                    "malformed-vertex-rotation",
                    f"rotation at {v} lists {sorted(have)}, neighbours are {sorted(want)}",
                )
            )

    seen: set = set()
    for c in d.crossings:
        e, f = c.edge_e, c.edge_f
        label = f"{e[0]}-{e[1]} x {f[0]}-{f[1]}"
        if e not in d.edges or f not in d.edges:
            out.append(Violation("unknown-edge", f"crossing {label} uses a non-edge"))
            continue
        if not independent(e, f):
            out.append(Violation("adjacent-crossing", f"crossing {label} between adjacent edges"))
            continue
        if c.key in seen:
            out.append(Violation("duplicate-crossing", f"second crossing record on {label}"))
            continue
        seen.add(c.key)
        if set(c.rotation) != set(e) | set(f) or len(c.rotation) != 4:
            out.append(Violation("malformed-crossing-rotation", f"rotation {c.rotation} at {label}"))
            continue
        pos = c.rotation.positions
        if (pos[e[0]] - pos[e[1]]) % 2:
            out.append(Violation("non-alternating-crossing", f"rotation {c.rotation} at {label}"))
    return out


def signed_order(*parts: tuple[int, Iterable[str]]) -> CyclicOrder:
    """``[[s1 P1 . s2 P2 . ...]]`` as a cyclic order."""
    return CyclicOrder(concat((s, tuple(p)) for s, p in parts))
