"""Realizability of rotation systems by simple drawings on the sphere.

The engine inserts edges one at a time into a planar map whose nodes are the
real vertices plus one node per crossing.  A new edge leaves its first
endpoint through the gap forced by the prescribed rotation, then walks
through faces, crossing only edges that are independent of it and not yet
crossed by it, until it can enter the matching gap at its other endpoint (or
place that endpoint, if it is new, in the current face).  Exhausting every
route proves non-realizability; any completed map is a certificate.

Disconnected graphs are handled component by component, so edges of
different components never cross in the produced witnesses.
"""

from __future__ import annotations

import json
import random
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations, product

from .combinatorics import CyclicOrder
from .drawing import AbstractDrawing, CrossingRecord, Edge, edge, independent
from .errors import BudgetExceeded, UnknownVertexError

DEFAULT_BUDGET = 10**7
K4_TABLE_VERSION = 1


# ---------------------------------------------------------------------------
# Public data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    vertices: tuple
    edges: frozenset
    rotation: Mapping[str, CyclicOrder]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        es = frozenset(edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", es)
        rot = {
            v: r if isinstance(r, CyclicOrder) else CyclicOrder(r) for v, r in self.rotation.items()
        }
        object.__setattr__(self, "rotation", rot)
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("repeated vertex")
        nbrs: dict = {v: set() for v in vs}
        for a, b in es:
            if a not in vs or b not in vs:
                raise UnknownVertexError(f"edge {a}-{b} has an unknown endpoint")
            nbrs[a].add(b)
            nbrs[b].add(a)
        for v in vs:
            if set(rot.get(v, ())) != nbrs[v]:
                raise ValueError(f"rotation at {v} must list exactly its neighbours {sorted(nbrs[v])}")

    @classmethod
    def complete(cls, rotation: Mapping[str, Iterable[str]]) -> RotationSystem:
        """Rotation system of the complete graph on ``rotation``'s keys."""
        vs = tuple(rotation)
        return cls(vs, frozenset(edge(a, b) for a, b in combinations(vs, 2)), dict(rotation))

    def restrict(self, keep: Iterable[str]) -> RotationSystem:
        keep = set(keep)
        vs = tuple(v for v in self.vertices if v in keep)
        es = frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)
        return RotationSystem(vs, es, {v: self.rotation[v].restrict(keep) for v in vs})

    def relabel(self, phi: Mapping) -> RotationSystem:
        return RotationSystem(
            tuple(phi[v] for v in self.vertices),
            frozenset(edge(phi[a], phi[b]) for a, b in self.edges),
            {phi[v]: r.relabel(phi) for v, r in self.rotation.items()},
        )

    def key(self) -> tuple:
        return tuple((v, self.rotation[v].items) for v in sorted(self.vertices))


@dataclass(frozen=True)
class PlanarizedWitness:
    """A planar map certifying a drawing.

    ``nodes`` lists real vertices first, then crossing nodes ``x1, x2, ...``.
    ``rotation`` gives the clockwise order of neighbouring nodes at every
    node; the planarization is a simple graph, so neighbours identify darts.
    ``segment_map`` sends each original edge ``(a, b)`` to its node path
    from ``a`` to ``b``.
    """

    vertices: tuple
    nodes: tuple
    rotation: Mapping[str, CyclicOrder]
    segment_map: Mapping[Edge, tuple]

    @property
    def crossing_nodes(self) -> tuple:
        return self.nodes[len(self.vertices):]

    def segment_edges(self) -> dict:
        """``(node, node)`` -> original edge, for both orientations."""
        out = {}
        for e, path in self.segment_map.items():
            for s, t in zip(path, path[1:]):
                out[(s, t)] = e
                out[(t, s)] = e
        return out

    def faces(self) -> list[list[tuple]]:
        """Face boundaries as lists of darts ``(tail, head)``."""
        seen: set = set()
        out = []
        for v in self.nodes:
            for w in self.rotation.get(v, ()):
                if (v, w) in seen:
                    continue
                face = []
                d = (v, w)
                while d not in seen:
                    seen.add(d)
                    face.append(d)
                    t, h = d
                    d = (h, self.rotation[h].successor(t))
                out.append(face)
        return out


@dataclass(frozen=True)
class Unrealizable:
    """Negative verdict: the search exhausted every insertion route."""

    expansions: int = 0

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class K4Entry:
    rotation: RotationSystem
    realizable: bool
    crossing: tuple | None = None  # pair of independent edges, or None
    completions: int = 0


# ---------------------------------------------------------------------------
# Mutable planar map used by the search
# ---------------------------------------------------------------------------


class _Map:
    __slots__ = ("tail", "nxt", "prv", "eid", "vdart", "present")

    def __init__(self, n_vertices: int):
        self.tail: list = []
        self.nxt: list = []
        self.prv: list = []
        self.eid: list = []
        self.vdart: list = [-1] * n_vertices
        self.present: list = [False] * n_vertices

    def copy(self) -> _Map:
        m = _Map.__new__(_Map)
        m.tail = self.tail[:]
        m.nxt = self.nxt[:]
        m.prv = self.prv[:]
        m.eid = self.eid[:]
        m.vdart = self.vdart[:]
        m.present = self.present[:]
        return m

    def new_pair(self, a: int, b: int, e: int) -> int:
        d = len(self.tail)
        self.tail += [a, b]
        self.nxt += [d, d + 1]
        self.prv += [d, d + 1]
        self.eid += [e, e]
        return d

    def insert_after(self, p: int, d: int) -> None:
        n = self.nxt[p]
        self.nxt[d] = n
        self.prv[d] = p
        self.prv[n] = d
        self.nxt[p] = d

    def darts_at(self, node: int) -> Iterator[int]:
        d0 = self.vdart[node]
        if d0 < 0:
            return
        d = d0
        while True:
            yield d
            d = self.nxt[d]
            if d == d0:
                return

    def face(self, d0: int) -> list[int]:
        """The face orbit containing ``d0`` (face on the left of each dart)."""
        out = [d0]
        d = self.nxt[d0 ^ 1]
        while d != d0:
            out.append(d)
            d = self.nxt[d ^ 1]
        return out


class _Search:
    """Backtracking over insertion routes for one rotation system."""

    def __init__(self, rs: RotationSystem, budget: int, seed: int | None):
        self.rs = rs
        self.budget = budget
        self.expansions = 0
        self.rng = random.Random(seed) if seed is not None else None
        self.index = {v: k for k, v in enumerate(rs.vertices)}
        self.n = len(rs.vertices)
        ordered = sorted(rs.edges, key=lambda e: sorted((self.index[e[0]], self.index[e[1]])))
        self.edges = self._connected_order(ordered)
        self.eidx = {e: k for k, e in enumerate(self.edges)}
        self.ends = [(self.index[a], self.index[b]) for a, b in self.edges]
        # per vertex: rotation as a tuple of vertex indices
        self.rot = {
            self.index[v]: tuple(self.index[w] for w in r) for v, r in rs.rotation.items()
        }

    def _connected_order(self, ordered: list) -> list:
        remaining = list(ordered)
        seen: set = set()
        out = []
        while remaining:
            pick = next((e for e in remaining if e[0] in seen or e[1] in seen), None)
            if pick is None:
                pick = remaining[0]
            elif self.rng is not None:
                pick = self.rng.choice([e for e in remaining if e[0] in seen or e[1] in seen])
            remaining.remove(pick)
            seen.update(pick)
            out.append(pick)
        return out

    def _tick(self) -> None:
        self.expansions += 1
        if self.expansions > self.budget:
            raise BudgetExceeded(self.budget)

    def _other(self, e: int, u: int) -> int:
        a, b = self.ends[e]
        return b if a == u else a

    def _gap(self, m: _Map, u: int, v: int) -> int:
        """Dart at ``u`` after which the edge towards ``v`` must be inserted."""
        here = {self._other(m.eid[d], u): d for d in m.darts_at(u)}
        r = self.rot[u]
        k = r.index(v)
        for step in range(1, len(r)):
            w = r[k - step]
            if w in here:
                return here[w]
        raise AssertionError("gap requested at a vertex without darts")

    # -- route enumeration -------------------------------------------------

    def _cross(self, m: _Map, c: int, p: int, d: int, e_new: int) -> int:
        td = d ^ 1
        b = m.tail[td]
        x = len(m.vdart)
        m.vdart.append(-1)
        d2 = m.new_pair(x, b, m.eid[d])
        d2t = d2 ^ 1
        if m.nxt[td] == td:
            m.nxt[d2t] = m.prv[d2t] = d2t
        else:
            n_, p_ = m.nxt[td], m.prv[td]
            m.nxt[d2t], m.prv[d2t] = n_, p_
            m.prv[n_] = d2t
            m.nxt[p_] = d2t
        if m.vdart[b] == td:
            m.vdart[b] = d2t
        m.tail[td] = x
        s = m.new_pair(c, x, e_new)
        st = s ^ 1
        m.insert_after(p, s)
        m.nxt[st], m.nxt[d2], m.nxt[td] = d2, td, st
        m.prv[d2], m.prv[td], m.prv[st] = st, d2, td
        m.vdart[x] = st
        return d2

    def _routes(self, m: _Map, e: int) -> Iterator[_Map]:
        u, v = self.ends[e]
        if not m.present[u] and not m.present[v]:
            m = m.copy()
            s = m.new_pair(u, v, e)
            m.vdart[u], m.vdart[v] = s, s ^ 1
            m.present[u] = m.present[v] = True
            yield m
            return
        if not m.present[u]:
            u, v = v, u
        yield from self._walk(m, u, v, e, u, self._gap(m, u, v), frozenset())

    def _walk(self, m: _Map, u: int, v: int, e: int, c: int, p: int, crossed: frozenset):
        self._tick()
        orbit = m.face(p ^ 1)
        # finish inside the current face
        if m.present[v]:
            q = self._gap(m, v, u)
            if (q ^ 1) in orbit:
                m2 = m.copy()
                s = m2.new_pair(c, v, e)
                m2.insert_after(p, s)
                m2.insert_after(q, s ^ 1)
                yield m2
        else:
            m2 = m.copy()
            s = m2.new_pair(c, v, e)
            m2.insert_after(p, s)
            m2.vdart[v] = s ^ 1
            m2.present[v] = True
            yield m2
        # or cross one boundary segment of the face
        ends = self.ends[e]
        options = []
        for d in orbit:
            f = m.eid[d]
            if f in crossed or f == e:
                continue
            fa, fb = self.ends[f]
            if fa in ends or fb in ends:
                continue
            options.append(d)
        if self.rng is not None:
            self.rng.shuffle(options)
        for d in options:
            m2 = m.copy()
            p2 = self._cross(m2, c, p, d, e)
            yield from self._walk(m2, u, v, e, len(m2.vdart) - 1, p2, crossed | {m.eid[d]})

    def completions(self) -> Iterator[_Map]:
        def rec(m: _Map, k: int):
            if k == len(self.edges):
                yield m
                return
            for m2 in self._routes(m, k):
                yield from rec(m2, k + 1)

        m0 = _Map(self.n)
        for v in range(self.n):
            m0.present[v] = False
        yield from rec(m0, 0)

    # -- certificate --------------------------------------------------------

    def witness(self, m: _Map) -> PlanarizedWitness:
        names = list(self.rs.vertices) + [f"x{k}" for k in range(1, len(m.vdart) - self.n + 1)]
        rotation = {}
        for node, name in enumerate(names):
            rotation[name] = CyclicOrder(names[m.tail[d ^ 1]] for d in m.darts_at(node))
        segment_map = {}
        for k, (a, b) in enumerate(self.edges):
            ia = self.index[a]
            d = next(d for d in m.darts_at(ia) if m.eid[d] == k)
            path = [a]
            while True:
                h = m.tail[d ^ 1]
                path.append(names[h])
                if h < self.n:
                    break
                d = m.nxt[m.nxt[d ^ 1]]
            if path[-1] != b:
                raise AssertionError("segment path ends at the wrong vertex")
            segment_map[(a, b)] = tuple(path)
        return PlanarizedWitness(self.rs.vertices, tuple(names), rotation, segment_map)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def iter_witnesses(
    rs: RotationSystem, budget: int = DEFAULT_BUDGET, seed: int | None = None
) -> Iterator[PlanarizedWitness]:
    """Every completion of ``rs`` as a witness (one per planar map)."""
    search = _Search(rs, budget, seed)
    for m in search.completions():
        yield search.witness(m)


def realize(
    rs: RotationSystem, budget: int = DEFAULT_BUDGET, seed: int | None = None
) -> PlanarizedWitness | Unrealizable:
    search = _Search(rs, budget, seed)
    for m in search.completions():
        return search.witness(m)
    return Unrealizable(search.expansions)


def crossings_of_witness(w: PlanarizedWitness) -> AbstractDrawing:
    seg = w.segment_edges()
    toward = {}
    for e, path in w.segment_map.items():
        for k, node in enumerate(path):
            if k + 1 < len(path):
                toward[(node, path[k + 1])] = path[-1]
            if k > 0:
                toward[(node, path[k - 1])] = path[0]
    crossings = []
    for x in w.crossing_nodes:
        nb = w.rotation[x].items
        e, f = seg[(x, nb[0])], seg[(x, nb[1])]
        crossings.append(CrossingRecord(e, f, CyclicOrder(toward[(x, y)] for y in nb)))
    rotations = {
        v: CyclicOrder(toward[(v, y)] for y in w.rotation[v]) for v in w.vertices
    }
    return AbstractDrawing(
        tuple((v,) for v in w.vertices), frozenset(w.segment_map), rotations, tuple(crossings)
    )


def check_witness(w: PlanarizedWitness, rs: RotationSystem | None = None) -> list[str]:
    """Problems with ``w`` as a certificate (empty when valid)."""
    problems: list[str] = []
    nodes = set(w.nodes)
    real = set(w.vertices)
    adj = {v: set(w.rotation.get(v, ())) for v in w.nodes}
    for v, nb in adj.items():
        for y in nb:
            if y not in nodes or v not in adj.get(y, set()):
                problems.append(f"segment {v}-{y} is not listed at both ends")
    seg = w.segment_edges()
    segs_from_paths = {frozenset(k) for k in seg}
    segs_from_rot = {frozenset((v, y)) for v, nb in adj.items() for y in nb}
    if segs_from_paths != segs_from_rot:
        problems.append("segment_map and rotations describe different segments")
        return problems

    # Euler: each component contributes V - E + F = 2
    n_seg = len(segs_from_rot)
    n_faces = len(w.faces()) + sum(1 for v in w.nodes if not adj[v])
    comps = _components(w.nodes, adj)
    if len(w.nodes) - n_seg + n_faces != 2 * comps:
        problems.append(
            f"Euler check failed: V={len(w.nodes)} E={n_seg} F={n_faces} components={comps}"
        )

    for x in w.crossing_nodes:
        nb = w.rotation[x].items
        if len(nb) != 4:
            problems.append(f"crossing node {x} has degree {len(nb)}")
            continue
        e0, e1, e2, e3 = (seg[(x, y)] for y in nb)
        if not (e0 == e2 and e1 == e3 and e0 != e1):
            problems.append(f"crossing node {x} does not alternate two edges")
        elif not independent(e0, e1):
            problems.append(f"crossing node {x} joins adjacent edges")

    pair_count: dict = {}
    for e, path in w.segment_map.items():
        if path[0] != e[0] or path[-1] != e[1]:
            problems.append(f"path of {e} has wrong ends")
        if len(set(path)) != len(path):
            problems.append(f"path of {e} repeats a node")
        if any(x in real for x in path[1:-1]):
            problems.append(f"path of {e} passes through a vertex")
    for x in w.crossing_nodes:
        nb = w.rotation[x].items
        if len(nb) == 4:
            key = frozenset((seg[(x, nb[0])], seg[(x, nb[1])]))
            pair_count[key] = pair_count.get(key, 0) + 1
    for key, c in pair_count.items():
        if c > 1:
            problems.append(f"edges {sorted(key)} cross {c} times")

    if rs is not None and not problems:
        if set(w.segment_map) != rs.edges or set(w.vertices) != set(rs.vertices):
            problems.append("witness graph differs from the rotation system's graph")
        else:
            d = crossings_of_witness(w)
            for v in rs.vertices:
                if d.vertex_rotations[v] != rs.rotation[v]:
                    problems.append(f"rotation at {v} is {d.vertex_rotations[v]}, expected {rs.rotation[v]}")
    return problems


def _components(nodes, adj) -> int:
    seen: set = set()
    count = 0
    for v in nodes:
        if v in seen:
            continue
        count += 1
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return count


def enumerate_completions(
    rs: RotationSystem, budget: int = DEFAULT_BUDGET, seed: int | None = None
) -> list[AbstractDrawing]:
    """Distinct crossing data over all completions, in discovery order."""
    out: dict = {}
    for w in iter_witnesses(rs, budget, seed):
        d = crossings_of_witness(w)
        out.setdefault(d.crossing_data(), d)
    return list(out.values())


# ---------------------------------------------------------------------------
# K4 table
# ---------------------------------------------------------------------------

K4_LABELS = ("1", "2", "3", "4")


def all_k4_systems() -> list[RotationSystem]:
    """The 16 labelled rotation systems of K4, in a fixed order."""
    choices = []
    for v in K4_LABELS:
        others = [w for w in K4_LABELS if w != v]
        choices.append([CyclicOrder(others), CyclicOrder(others[::-1])])
    out = []
    for mask in range(16):
        rot = {v: choices[k][(mask >> (3 - k)) & 1] for k, v in enumerate(K4_LABELS)}
        out.append(RotationSystem.complete(rot))
    return out


def build_k4_table(budget: int = DEFAULT_BUDGET) -> list[K4Entry]:
    out = []
    for rs in all_k4_systems():
        comps = enumerate_completions(rs, budget)
        if not comps:
            out.append(K4Entry(rs, False))
            continue
        verdicts = {c.crossing_pairs for c in comps}
        if len(verdicts) != 1:
            raise AssertionError(f"K4 system {rs.key()} has several crossing verdicts")
        (pairs,) = verdicts
        if len(pairs) > 1:
            raise AssertionError("a K4 completion with more than one crossing")
        out.append(K4Entry(rs, True, next(iter(pairs)) if pairs else None, len(comps)))
    return out


def k4_table_to_json(entries: list[K4Entry]) -> dict:
    rows = []
    for e in entries:
        rows.append(
            {
                "rotation": {v: list(e.rotation.rotation[v].items) for v in K4_LABELS},
                "realizable": e.realizable,
                "crossing": [list(x) for x in e.crossing] if e.crossing else None,
                "completions": e.completions,
            }
        )
    return {
        "version": K4_TABLE_VERSION,
        "realizable_count": sum(e.realizable for e in entries),
        "entries": rows,
    }


def k4_table_from_json(data: dict) -> list[K4Entry]:
    out = []
    for row in data["entries"]:
        rs = RotationSystem.complete(row["rotation"])
        cr = tuple(tuple(x) for x in row["crossing"]) if row["crossing"] else None
        out.append(K4Entry(rs, row["realizable"], cr, row["completions"]))
    return out


@lru_cache(maxsize=1)
def k4_table() -> dict:
    """System key -> :class:`K4Entry`, loaded from the packaged golden file."""
    text = resources.files("canondraw").joinpath("data/k4_table.json").read_text()
    entries = k4_table_from_json(json.loads(text))
    return {e.rotation.key(): e for e in entries}


def k4_lookup(rs: RotationSystem) -> tuple[K4Entry, dict]:
    """Table entry for a 4-vertex complete system plus the label map used."""
    verts = sorted(rs.vertices)
    phi = dict(zip(verts, K4_LABELS))
    entry = k4_table()[rs.relabel(phi).key()]
    return entry, {b: a for a, b in phi.items()}


def k4_crossing(rs: RotationSystem) -> tuple | None:
    """The crossing pair of a realizable 4-vertex complete system, in its own labels.

    Returns ``None`` for a crossing-free system and raises ``ValueError`` for
    a non-realizable one.
    """
    entry, back = k4_lookup(rs)
    if not entry.realizable:
        raise ValueError("non-realizable K4 rotation system")
    if entry.crossing is None:
        return None
    e, f = (edge(back[a], back[b]) for a, b in entry.crossing)
    return (e, f) if e < f else (f, e)


def is_realizable_ks(
    rs: RotationSystem, budget: int = DEFAULT_BUDGET, seed: int | None = None
) -> bool:
    m = len(rs.vertices)
    if m < 3:
        raise ValueError("complete-graph realizability needs at least 3 vertices")
    if len(rs.edges) != m * (m - 1) // 2:
        raise ValueError("rotation system is not of a complete graph")
    if m >= 4:
        for quad in combinations(rs.vertices, 4):
            entry, _ = k4_lookup(rs.restrict(quad))
            if not entry.realizable:
                return False
    return not isinstance(realize(rs, budget, seed), Unrealizable)


def all_complete_systems(labels: Iterable[str]) -> Iterator[RotationSystem]:
    """Every labelled rotation system of the complete graph on ``labels``."""
    labels = tuple(labels)
    per_vertex = []
    for v in labels:
        others = [w for w in labels if w != v]
        first, rest = others[0], others[1:]
        per_vertex.append([CyclicOrder((first, *p)) for p in permutations(rest)])

    def rec(k, acc):
        if k == len(labels):
            yield RotationSystem.complete(dict(zip(labels, acc)))
            return
        for r in per_vertex[k]:
            yield from rec(k + 1, acc + [r])

    yield from rec(0, [])


def bipartite_systems(A: Sequence[str], B: Sequence[str]) -> Iterator[RotationSystem]:
    """Every labelled rotation system of the complete bipartite graph on A, B."""
    A, B = tuple(A), tuple(B)
    es = frozenset(edge(a, b) for a in A for b in B)
    choices = []
    for v, nbrs in [(a, B) for a in A] + [(b, A) for b in B]:
        first, rest = nbrs[0], nbrs[1:]
        choices.append([(v, CyclicOrder((first, *p))) for p in permutations(rest)])
    for combo in product(*choices):
        yield RotationSystem(A + B, es, dict(combo))


# ---------------------------------------------------------------------------
# Isomorphism of planar maps
# ---------------------------------------------------------------------------


def witness_code(w: PlanarizedWitness, kind: Mapping[str, object], reflect: bool = True) -> tuple:
    """Label-free canonical code of a connected witness.

    ``kind`` types the real vertices (for instance by partite class);
    crossing nodes share one type.  Two witnesses have equal codes iff an
    orientation-preserving map homeomorphism (or any homeomorphism, with
    ``reflect``) carries one onto the other respecting types.
    """
    kinds = {v: (0, str(kind[v])) for v in w.vertices}
    kinds.update({x: (1, "") for x in w.crossing_nodes})
    rots = [{v: r.items for v, r in w.rotation.items()}]
    if reflect:
        rots.append({v: r.items[::-1] for v, r in w.rotation.items()})
    best = None
    for rot in rots:
        for v0, nbrs in rot.items():
            for w0 in nbrs:
                code = _traverse_code(rot, kinds, v0, w0)
                if best is None or code < best:
                    best = code
    return best


def _traverse_code(rot: Mapping, kinds: Mapping, v0, w0) -> tuple:
    num = {v0: 0}
    order = [(v0, w0)]
    rows = []
    for v, start in order:
        seq = rot[v]
        k = seq.index(start)
        row = [kinds[v]]
        for x in seq[k:] + seq[:k]:
            if x not in num:
                num[x] = len(num)
                order.append((x, v))
            row.append(num[x])
        rows.append(tuple(row))
    return tuple(rows)
