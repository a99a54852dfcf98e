"""Independent reference engines used only by the tests.

Nothing here shares code with the search engine in ``canondraw.realizer``.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from canondraw.combinatorics import CyclicOrder
from canondraw.drawing import edge, independent


# ---------------------------------------------------------------------------
# Brute-force realizability
# ---------------------------------------------------------------------------


def _faces(rot: dict) -> int:
    seen = set()
    count = 0
    for v, nb in rot.items():
        for w in nb:
            if (v, w) in seen:
                continue
            count += 1
            d = (v, w)
            while d not in seen:
                seen.add(d)
                t, h = d
                r = rot[h]
                d = (h, r[(r.index(t) + 1) % len(r)])
    return count


def _connected(rot: dict) -> bool:
    nodes = list(rot)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in rot[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def brute_force_maps(vertices, edges, rotation):
    """Every planarization consistent with the vertex rotations.

    Enumerates crossing-pair subsets, the order of crossings along every
    edge and the two possible rotations at every crossing, keeping the maps
    that are connected and satisfy Euler's formula on the sphere.  Yields
    ``(rot, toward)`` where ``rot`` maps node -> clockwise neighbour list and
    ``toward[(node, nbr)]`` is the original endpoint reached along that dart.
    """
    edges = sorted(edge(*e) for e in edges)
    pairs = [(e, f) for e, f in combinations(edges, 2) if independent(e, f)]
    for k in range(len(pairs) + 1):
        for S in combinations(pairs, k):
            on_edge = {e: [] for e in edges}
            for p in S:
                on_edge[p[0]].append(p)
                on_edge[p[1]].append(p)
            orders = [list(permutations(on_edge[e])) for e in edges]
            for choice in product(*orders):
                paths = {
                    e: [e[0], *(("x", p) for p in seq), e[1]] for e, seq in zip(edges, choice)
                }
                for flips in product((0, 1), repeat=len(S)):
                    yield from _assemble(vertices, edges, rotation, S, paths, flips)


def _assemble(vertices, edges, rotation, S, paths, flips):
    rot = {}
    toward = {}
    for e, path in paths.items():
        for i in range(len(path) - 1):
            toward[(path[i], path[i + 1])] = e[1]
            toward[(path[i + 1], path[i])] = e[0]
    for p, flip in zip(S, flips):
        x = ("x", p)
        e, f = p
        pe, ne = _around(paths[e], x)
        pf, nf = _around(paths[f], x)
        rot[x] = [ne, nf, pe, pf] if flip == 0 else [ne, pf, pe, nf]
    for v in vertices:
        first = {}
        for e, path in paths.items():
            if path[0] == v:
                first[e[1]] = path[1]
            elif path[-1] == v:
                first[e[0]] = path[-2]
        rot[v] = [first[w] for w in rotation[v]]
    n_nodes = len(rot)
    n_seg = sum(len(nb) for nb in rot.values()) // 2
    if _connected(rot) and n_nodes - n_seg + _faces(rot) == 2:
        yield rot, toward


def _around(path, x):
    k = path.index(x)
    return path[k - 1], path[k + 1]


def brute_force_crossings(vertices, edges, rotation) -> set:
    """Distinct crossing data (pair -> rotation of endpoints) over all maps."""
    out = set()
    for rot, toward in brute_force_maps(vertices, edges, rotation):
        data = []
        for node, nb in rot.items():
            if isinstance(node, tuple):
                e, f = node[1]
                data.append(((e, f), CyclicOrder(toward[(node, y)] for y in nb)))
        out.add(frozenset(data))
    return out


# ---------------------------------------------------------------------------
# Isomorphism codes of planar maps
# ---------------------------------------------------------------------------


def map_code(rot: dict, kind: dict, reflect: bool = True) -> tuple:
    """Canonical code of a connected planar map with typed nodes."""
    best = None
    variants = [rot]
    if reflect:
        variants.append({v: list(reversed(nb)) for v, nb in rot.items()})
    for r in variants:
        for v0, nb in r.items():
            for w0 in nb:
                code = _bfs_code(r, kind, v0, w0)
                if best is None or code < best:
                    best = code
    return best


def _bfs_code(rot, kind, v0, w0):
    num = {v0: 0}
    queue = [(v0, w0)]
    out = []
    k = 0
    while k < len(queue):
        v, start = queue[k]
        k += 1
        nb = rot[v]
        i = nb.index(start)
        seq = nb[i:] + nb[:i]
        row = [kind[v]]
        for w in seq:
            if w not in num:
                num[w] = len(num)
                queue.append((w, v))
            row.append(num[w])
        out.append(tuple(row))
    return tuple(out)


# ---------------------------------------------------------------------------
# Corridor expansion of a K_m witness
# ---------------------------------------------------------------------------


def expansion_crossings(template, n: int, witness) -> set:
    """Crossing pairs of K_n^m obtained by thickening a drawing of K_m.

    Each class vertex becomes a box holding ``i(n), ..., i(1)`` left to
    right.  Corridors to the plus classes leave the top side left to right,
    corridors to the minus classes leave the bottom side right to left, and
    each corridor carries n^2 parallel strands.  Inside a half box the
    strands of one corridor are fanned without crossing each other.

    Reading the half box boundary clockwise, the ports come first and then
    the vertex line, which runs ``i(1), ..., i(n)`` on top and
    ``i(n), ..., i(1)`` below.
    """
    m = template.m
    plus = {i: list(template.plus[i - 1]) for i in range(1, m + 1)}
    minus = {i: list(template.minus[i - 1]) for i in range(1, m + 1)}

    def pos(i, j, a):
        """Clockwise position of ``i(a)`` on the vertex line facing corridor ij."""
        return a if j in plus[i] else n + 1 - a

    def name(i, a):
        return f"{i}({a})"

    def pair(e, f):
        e, f = edge(*e), edge(*f)
        return (e, f) if e < f else (f, e)

    rng = range(1, n + 1)
    out = set()

    # two strands of one corridor: the ribbon reverses clockwise order, so
    # they cross iff their clockwise orders at the two boxes agree
    for i, j in combinations(range(1, m + 1), 2):
        for (a, b), (a2, b2) in combinations(product(rng, rng), 2):
            if a == a2 or b == b2:
                continue
            if (pos(i, j, a) < pos(i, j, a2)) == (pos(j, i, b) < pos(j, i, b2)):
                out.add(pair((name(i, a), name(j, b)), (name(i, a2), name(j, b2))))

    # two corridors leaving the same side of box i: chords of the half box
    # [ports of the earlier corridor][ports of the later one][vertex line]
    for i in range(1, m + 1):
        for blocks in (plus[i], minus[i]):
            for j, l in combinations(blocks, 2):
                for a, a2 in product(rng, rng):
                    if a == a2 or pos(i, j, a) > pos(i, l, a2):
                        continue
                    for b, c in product(rng, rng):
                        out.add(pair((name(i, a), name(j, b)), (name(i, a2), name(l, c))))

    # disjoint corridors cross exactly where the witness edges cross
    seg = witness.segment_edges()
    for x in witness.crossing_nodes:
        nb = witness.rotation[x].items
        (i, j), (k, l) = (tuple(map(int, e)) for e in (seg[(x, nb[0])], seg[(x, nb[1])]))
        for a, b, c, d in product(rng, repeat=4):
            out.add(pair((name(i, a), name(j, b)), (name(k, c), name(l, d))))
    return out
