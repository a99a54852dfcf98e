"""Templates, sign functions and canonical drawings of K_n^m.

A template lists, for every class ``i``, the classes whose edges arrive at
``i`` from above (``plus``) and from below (``minus``), each in left-to-right
order.  Together with a class size ``n`` it determines a canonical drawing
up to weak isomorphism.  Class indices are 1-based integers; vertex ``k`` of
class ``i`` is named ``"i(k)"``.
"""

from __future__ import annotations

import random

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product

from .combinatorics import CyclicOrder, Permutation, concat
from .drawing import (
    AbstractDrawing,
    CrossingRecord,
    Violation,
    bipartite_edges,
    class_perm,
    edge,
    is_rho_drawing,
    parse_vertex,
)
from .errors import InvalidTemplateError, UnrealizableTemplateError
from .realizer import (
    DEFAULT_BUDGET,
    PlanarizedWitness,
    RotationSystem,
    Unrealizable,
    crossings_of_witness,
    is_realizable_ks,
    k4_crossing,
    realize,
)

# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignFunction:
    m: int
    values: Mapping[tuple, int]

    def __call__(self, j: int, i: int) -> int:
        return self.values[(j, i)]

    def plus(self, i: int) -> frozenset:
        return frozenset(j for j in range(1, self.m + 1) if j != i and self.values[(j, i)] == 1)

    def minus(self, i: int) -> frozenset:
        return frozenset(j for j in range(1, self.m + 1) if j != i and self.values[(j, i)] == -1)

    def __hash__(self) -> int:
        return hash((self.m, tuple(sorted(self.values.items()))))


@dataclass(frozen=True)
class Template:
    """``plus[i-1]`` and ``minus[i-1]`` are the orders ``i+`` and ``i-``."""

    plus: tuple
    minus: tuple

    def __post_init__(self):
        object.__setattr__(self, "plus", tuple(Permutation(p) for p in self.plus))
        object.__setattr__(self, "minus", tuple(Permutation(p) for p in self.minus))
        if len(self.plus) != len(self.minus):
            raise InvalidTemplateError("plus and minus lists differ in length")
        m = self.m
        for i in range(1, m + 1):
            try:
                both = concat([(1, self.plus[i - 1]), (1, self.minus[i - 1])])
            except ValueError as exc:
                raise InvalidTemplateError(f"class {i}: {exc}") from None
            if sorted(both) != [j for j in range(1, m + 1) if j != i]:
                raise InvalidTemplateError(
                    f"class {i}: plus and minus must partition the other classes, got {list(both)}"
                )

    @property
    def m(self) -> int:
        return len(self.plus)

    @classmethod
    def from_lists(cls, classes: Sequence[tuple[Iterable[int], Iterable[int]]]) -> Template:
        return cls(tuple(tuple(p) for p, _ in classes), tuple(tuple(q) for _, q in classes))

    def __repr__(self) -> str:
        body = ", ".join(
            f"{i}+={list(self.plus[i - 1])} {i}-={list(self.minus[i - 1])}"
            for i in range(1, self.m + 1)
        )
        return f"Template({body})"


@dataclass(frozen=True)
class CanonicalSpec:
    template: Template
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("class size must be at least 1")


class NotCanonical:
    """Negative verdict of :func:`template_of`, carrying the reason."""

    def __init__(self, reason: str):
        self.reason = reason

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"NotCanonical({self.reason!r})"


# ---------------------------------------------------------------------------
# Basic read-offs
# ---------------------------------------------------------------------------


def sign_of(t: Template) -> SignFunction:
    if not isinstance(t, Template):
        raise InvalidTemplateError("not a template")
    values = {}
    for i in range(1, t.m + 1):
        for j in t.plus[i - 1]:
            values[(j, i)] = 1
        for j in t.minus[i - 1]:
            values[(j, i)] = -1
    return SignFunction(t.m, values)


def reverse_class(t: Template, i: int) -> Template:
    """Template of the same drawing after reversing the order of class ``i``."""
    plus, minus = list(t.plus), list(t.minus)
    plus[i - 1], minus[i - 1] = t.minus[i - 1], t.plus[i - 1]
    return Template(tuple(plus), tuple(minus))


def _side_order(classes: Sequence[Sequence[str]], sigma: SignFunction, i: int, blocks, sign_i: int):
    if not blocks:
        return None
    parts = [(sign_i, classes[i - 1])] + [(sigma(i, j), classes[j - 1]) for j in blocks]
    return CyclicOrder(concat(parts))


def orders_for_classes(t: Template, classes: Sequence[Sequence[str]], i: int):
    """The plus-side and minus-side bounding orders for class ``i``."""
    sigma = sign_of(t)
    return (
        _side_order(classes, sigma, i, t.plus[i - 1], 1),
        _side_order(classes, sigma, i, t.minus[i - 1], -1),
    )


def induced_orders(spec: CanonicalSpec, i: int):
    classes = [class_perm(k, spec.n) for k in range(1, spec.template.m + 1)]
    return orders_for_classes(spec.template, classes, i)


def rotation_system_of(t: Template) -> RotationSystem:
    rot = {
        str(i): [str(j) for j in (*t.plus[i - 1], *t.minus[i - 1])] for i in range(1, t.m + 1)
    }
    return RotationSystem.complete(rot)


def is_realizable(
    t: Template, budget: int = DEFAULT_BUDGET, seed: int | None = None, witness: bool = False
):
    """Realizability of ``t``; with ``witness=True`` returns ``(bool, witness | None)``."""
    rs = rotation_system_of(t)
    if t.m < 3:
        ok = True
    else:
        ok = is_realizable_ks(rs, budget, seed)
    if not witness:
        return ok
    if not ok:
        return False, None
    w = realize(rs, budget, seed)
    return True, (None if isinstance(w, Unrealizable) else w)


# ---------------------------------------------------------------------------
# Crossing predicate
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _k4_pair(t: Template, quad: tuple) -> tuple | None:
    rs = rotation_system_of(t).restrict(str(c) for c in quad)
    try:
        pair = k4_crossing(rs)
    except ValueError:
        raise UnrealizableTemplateError(f"classes {quad} induce a non-realizable K4") from None
    if pair is None:
        return None
    return frozenset(frozenset(int(x) for x in e) for e in pair)


def _side(t: Template, i: int, j: int) -> int:
    return 1 if j in t.plus[i - 1] else -1


def _case1_order(spec: CanonicalSpec, i: int, j: int, l: int):
    """Bounding order deciding crossings between E(i, j) and E(i, l), or None."""
    t = spec.template
    s = _side(t, i, j)
    if _side(t, i, l) != s:
        return None
    return induced_orders(spec, i)[0 if s == 1 else 1]


def crosses(spec: CanonicalSpec, e, f) -> bool:
    e, f = edge(*e), edge(*f)
    if set(e) & set(f):
        return False
    (i1, _), (j1, _) = (parse_vertex(x) for x in e)
    (i2, _), (j2, _) = (parse_vertex(x) for x in f)
    ce, cf = {i1, j1}, {i2, j2}
    if len(ce) != 2 or len(cf) != 2:
        raise ValueError("edge inside a single class")
    shared = ce & cf
    if shared:
        i = min(shared)
        (j,) = ce - {i}
        (l,) = (cf - {i}) or (j,)
        rho = _case1_order(spec, i, j, l)
        if rho is None:
            return False
        pos = rho.positions
        a, b = sorted((pos[e[0]], pos[e[1]]))
        x, y = pos[f[0]], pos[f[1]]
        return (a < x < b) != (a < y < b)
    quad = tuple(sorted(ce | cf))
    pair = _k4_pair(spec.template, quad)
    return pair is not None and frozenset((frozenset(ce), frozenset(cf))) == pair


# ---------------------------------------------------------------------------
# Canonical drawings
# ---------------------------------------------------------------------------


def expected_vertex_rotation(t: Template, classes: Sequence[Sequence[str]], v: str, i: int):
    """Rotation at class-``i`` vertex ``v``: plus side, then minus side."""
    plus_o, minus_o = orders_for_classes(t, classes, i)
    own = set(classes[i - 1])
    seq = []
    for rho in (plus_o, minus_o):
        if rho is not None:
            seq.extend(x for x in rho.after(v) if x not in own)
    return CyclicOrder(seq)


def canonical_drawing(
    spec: CanonicalSpec,
    seed: int | None = None,
    budget: int = DEFAULT_BUDGET,
    witness: PlanarizedWitness | None = None,
) -> AbstractDrawing:
    t, n = spec.template, spec.n
    m = t.m
    if m >= 4 and witness is None:
        ok, witness = is_realizable(t, budget, seed, witness=True)
        if not ok:
            raise UnrealizableTemplateError("template is not realizable")
    elif m == 3 and not is_realizable(t, budget, seed):
        raise UnrealizableTemplateError("template is not realizable")
    class_rot = {}
    if witness is not None:
        for c in crossings_of_witness(witness).crossings:
            class_rot[c.key] = c.rotation

    classes = [class_perm(i, n) for i in range(1, m + 1)]
    edges = sorted(
        e for i, j in combinations(range(1, m + 1), 2) for e in bipartite_edges(classes[i - 1], classes[j - 1])
    )
    rotations = {
        v: expected_vertex_rotation(t, classes, v, i)
        for i in range(1, m + 1)
        for v in classes[i - 1]
    }
    side_orders = {i: induced_orders(spec, i) for i in range(1, m + 1)}
    cls = {v: parse_vertex(v)[0] for c in classes for v in c}

    crossings = []
    for e, f in combinations(edges, 2):
        if set(e) & set(f):
            continue
        ce, cf = {cls[e[0]], cls[e[1]]}, {cls[f[0]], cls[f[1]]}
        shared = ce & cf
        if shared:
            i = min(shared)
            (j,) = ce - {i}
            (l,) = (cf - {i}) or (j,)
            s = _side(t, i, j)
            if _side(t, i, l) != s:
                continue
            rho = side_orders[i][0 if s == 1 else 1]
            pos = rho.positions
            a, b = sorted((pos[e[0]], pos[e[1]]))
            x, y = pos[f[0]], pos[f[1]]
            if (a < x < b) != (a < y < b):
                quad = sorted((pos[e[0]], pos[e[1]], x, y))
                crossings.append(CrossingRecord(e, f, CyclicOrder(rho.items[k] for k in quad)))
            continue
        quad = tuple(sorted(ce | cf))
        pair = _k4_pair(t, quad)
        if pair is None or frozenset((frozenset(ce), frozenset(cf))) != pair:
            continue
        label = {str(cls[x]): x for x in (*e, *f)}
        key = tuple(sorted((edge(str(cls[e[0]]), str(cls[e[1]])), edge(str(cls[f[0]]), str(cls[f[1]])))))
        crossings.append(CrossingRecord(e, f, class_rot[key].relabel(label)))
    return AbstractDrawing(tuple(classes), frozenset(edges), rotations, tuple(crossings))


# ---------------------------------------------------------------------------
# Verification and read-off
# ---------------------------------------------------------------------------


def verify_canonical(
    d: AbstractDrawing, classes: Sequence[Sequence[str]], t: Template
) -> list[Violation]:
    """Check (C1), (C2), cross-side crossing-freeness and vertex rotations."""
    classes = [Permutation(c) for c in classes]
    report: list[Violation] = []
    if len(classes) != t.m:
        return [Violation("shape", f"{len(classes)} classes for a template on {t.m}")]
    for i in range(1, t.m + 1):
        plus_o, minus_o = orders_for_classes(t, classes, i)
        A = classes[i - 1]
        for clause, blocks, rho in (("C1", t.plus[i - 1], plus_o), ("C2", t.minus[i - 1], minus_o)):
            if rho is None:
                continue
            E = set()
            for j in blocks:
                E |= bipartite_edges(A, classes[j - 1])
            if not is_rho_drawing(d, rho, E):
                report.append(Violation(clause, f"class {i}: side edges are not a {rho}-drawing"))
        for j in t.plus[i - 1]:
            Ej = bipartite_edges(A, classes[j - 1])
            for k in t.minus[i - 1]:
                Ek = bipartite_edges(A, classes[k - 1])
                bad = [(e, f) for e in Ej for f in Ek if d.crosses(e, f)]
                if bad:
                    e, f = bad[0]
                    report.append(
                        Violation("C3'", f"classes {i},{j},{k}: {e[0]}-{e[1]} crosses {f[0]}-{f[1]}")
                    )
        nbrs = {x for k, c in enumerate(classes, 1) if k != i for x in c}
        for v in A:
            want = expected_vertex_rotation(t, classes, v, i)
            rot = d.vertex_rotations.get(v)
            have = rot.restrict(nbrs) if rot is not None else None
            if have != want:
                report.append(Violation("rotation", f"rotation at {v} is {have}, expected {want}"))
    return report


def _block_sequence(rot: CyclicOrder, owner: Mapping[str, int], keep: set) -> list | None:
    """Classes met around ``rot`` (restricted to ``keep``), or None if not contiguous."""
    seq = [owner[x] for x in rot if owner.get(x) in keep]
    if not seq:
        return []
    # rotate so that a block boundary sits at position 0
    k = next((k for k in range(len(seq)) if seq[k] != seq[k - 1]), 0)
    seq = seq[k:] + seq[:k]
    blocks = [c for idx, c in enumerate(seq) if idx == 0 or c != seq[idx - 1]]
    if len(set(blocks)) != len(blocks):
        return None
    return blocks


def template_of(d: AbstractDrawing, classes: Sequence[Sequence[str]]):
    """Read off the template of a canonical drawing with the given class orders."""
    classes = [Permutation(c) for c in classes]
    m = len(classes)
    if m < 2 or len({len(c) for c in classes}) != 1 or not classes[0]:
        return NotCanonical("need at least two non-empty classes of equal size")
    n = len(classes[0])
    owner = {v: k for k, c in enumerate(classes, 1) for v in c}
    sigma: dict = {}
    if n >= 2:
        for i, j in combinations(range(1, m + 1), 2):
            E = bipartite_edges(classes[i - 1], classes[j - 1])
            hits = [
                (s_ji, s_ij)
                for s_ji in (1, -1)
                for s_ij in (1, -1)
                if is_rho_drawing(
                    d, CyclicOrder(concat([(s_ji, classes[i - 1]), (s_ij, classes[j - 1])])), E
                )
            ]
            if len(hits) != 1:
                return NotCanonical(f"classes {i},{j} do not form a 1-page pair")
            sigma[(j, i)], sigma[(i, j)] = hits[0]
    else:
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if i != j:
                    sigma[(j, i)] = 1

    plus, minus = [], []
    for i in range(1, m + 1):
        v = classes[i - 1][0]
        rot = d.vertex_rotations.get(v)
        if rot is None:
            return NotCanonical(f"no rotation at {v}")
        sides = []
        for s in (1, -1):
            keep = {j for j in range(1, m + 1) if j != i and sigma[(j, i)] == s}
            blocks = _block_sequence(rot, owner, keep)
            if blocks is None:
                return NotCanonical(f"class {i}: side classes interleave around {v}")
            sides.append(blocks)
        plus.append(sides[0])
        minus.append(sides[1])

    # pick, per class and side, the linear order whose bounding order fits
    for i in range(1, m + 1):
        for side, lists in ((1, plus), (-1, minus)):
            blocks = lists[i - 1]
            if len(blocks) < 2:
                continue
            if n == 1:
                # one vertex per class: no side crossings, any rotation fits;
                # start at the smallest class
                k = blocks.index(min(blocks))
                lists[i - 1] = blocks[k:] + blocks[:k]
                continue
            E = set()
            for j in blocks:
                E |= bipartite_edges(classes[i - 1], classes[j - 1])
            fits = []
            for r in range(len(blocks)):
                cand = blocks[r:] + blocks[:r]
                parts = [(side, classes[i - 1])] + [(sigma[(i, j)], classes[j - 1]) for j in cand]
                if is_rho_drawing(d, CyclicOrder(concat(parts)), E):
                    fits.append(cand)
            if len(fits) != 1:
                return NotCanonical(f"class {i}: no unique side order")
            lists[i - 1] = fits[0]

    try:
        t = Template(tuple(plus), tuple(minus))
    except InvalidTemplateError as exc:
        return NotCanonical(str(exc))
    report = verify_canonical(d, classes, t)
    if report:
        return NotCanonical("; ".join(map(str, report[:3])))
    return t


def normalize(t: Template, flips: Iterable[int]) -> Template:
    for i in flips:
        t = reverse_class(t, i)
    return t


# ---------------------------------------------------------------------------
# Enumeration and sampling
# ---------------------------------------------------------------------------


def _class_rows(m: int, i: int) -> list[tuple[tuple, tuple]]:
    others = [j for j in range(1, m + 1) if j != i]
    rows = []
    for order in permutations(others):
        for cut in range(len(order) + 1):
            rows.append((order[:cut], order[cut:]))
    return rows


def all_templates(m: int) -> Iterator[Template]:
    """Every template on ``m`` classes, realizable or not."""
    per_class = [_class_rows(m, i) for i in range(1, m + 1)]
    for rows in product(*per_class):
        yield Template.from_lists(rows)


def random_template(m: int, rng: random.Random) -> Template:
    rows = []
    for i in range(1, m + 1):
        others = [j for j in range(1, m + 1) if j != i]
        rng.shuffle(others)
        cut = rng.randint(0, len(others))
        rows.append((tuple(others[:cut]), tuple(others[cut:])))
    return Template.from_lists(rows)
