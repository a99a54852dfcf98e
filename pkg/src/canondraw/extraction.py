"""Finding canonical subdrawings inside arbitrary drawings of K_N^m.

Every step that would use a Ramsey-type argument is replaced by exact search
over subpermutations in colex order, so at small sizes a step may legally
fail with :class:`NotFound`.  Every success is re-checked before it is
returned.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .combinatorics import CyclicOrder, Permutation, concat
from .drawing import AbstractDrawing, bipartite_edges, edge, is_rho_drawing, onepage_crossings, pair_key
from .errors import BudgetExceeded, NotFound, SimplicityViolation, TransitivityViolation
from .realizer import (
    DEFAULT_BUDGET,
    bipartite_systems,
    crossings_of_witness,
    iter_witnesses,
    witness_code,
)
from .templates import NotCanonical, SignFunction, Template, template_of, verify_canonical


class QuadColour(enum.IntEnum):
    ETA0 = 0  # no crossing
    ETA1 = 1  # ac x a'b, rotation [[a, a', c, b]]
    ETA2 = 2  # ab x a'c, rotation [[a, a', b, c]]
    ETA3 = 3  # ab x a'c, rotation [[a, c, b, a']]
    ETA4 = 4  # ac x a'b, rotation [[a, b, c, a']]


@dataclass(frozen=True)
class PairwiseOnePageCertificate:
    classes: tuple
    sign: SignFunction


@dataclass
class StageSchedule:
    """Per-stage class-size targets: each stage may shrink classes by ``ratio``."""

    ratio: float = 0.5

    def target(self, size: int, n: int) -> int:
        return max(n, math.ceil(size * self.ratio))

    def sizes(self, size: int, n: int, stages: int) -> list[int]:
        out = []
        for _ in range(stages):
            size = self.target(size, n)
            out.append(size)
        return out


@dataclass
class _Budget:
    limit: int = DEFAULT_BUDGET
    used: int = 0

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(self.limit)


@dataclass
class ExtractionResult:
    classes: tuple
    template: Template
    report: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def colex_combinations(seq: Sequence, k: int) -> Iterator[tuple]:
    """Size-``k`` subsequences of ``seq`` in colex order of their index sets."""
    idx = sorted(combinations(range(len(seq)), k), key=lambda c: c[::-1])
    for c in idx:
        yield tuple(seq[i] for i in c)


def _signed(sign: int, p: Sequence) -> Permutation:
    return Permutation(p) if sign > 0 else Permutation(tuple(p)[::-1])


def _order(*parts: Sequence) -> CyclicOrder:
    return CyclicOrder(concat((1, p) for p in parts))


# ---------------------------------------------------------------------------
# Quad colours
# ---------------------------------------------------------------------------


def colour_quad(d: AbstractDrawing, a: str, a2: str, b: str, c: str) -> QuadColour:
    ab, ac, a2b, a2c = edge(a, b), edge(a, c), edge(a2, b), edge(a2, c)
    for e in (ab, ac, a2b, a2c):
        if e not in d.edges:
            raise SimplicityViolation(f"{e[0]}-{e[1]} is not an edge")
    r1 = d.crossing_rotation(ab, a2c)
    r2 = d.crossing_rotation(ac, a2b)
    if r1 is not None and r2 is not None:
        raise SimplicityViolation(f"K2,2 on {a},{a2},{b},{c} has two crossings")
    if r1 is None and r2 is None:
        return QuadColour.ETA0
    if r1 is not None:
        if r1 == CyclicOrder((a, a2, b, c)):
            return QuadColour.ETA2
        if r1 == CyclicOrder((a, c, b, a2)):
            return QuadColour.ETA3
        raise SimplicityViolation(f"rotation {r1} at a crossing of {a}-{b} and {a2}-{c}")
    if r2 == CyclicOrder((a, a2, c, b)):
        return QuadColour.ETA1
    if r2 == CyclicOrder((a, b, c, a2)):
        return QuadColour.ETA4
    raise SimplicityViolation(f"rotation {r2} at a crossing of {a}-{c} and {a2}-{b}")


class _Colours:
    """Memoized quad colours for one drawing."""

    def __init__(self, d: AbstractDrawing, budget: _Budget):
        self.d = d
        self.memo: dict = {}
        self.budget = budget

    def __call__(self, a, a2, b, c) -> QuadColour:
        key = (a, a2, b, c)
        col = self.memo.get(key)
        if col is None:
            self.budget.tick()
            col = self.memo[key] = colour_quad(self.d, a, a2, b, c)
        return col

    def pair_colour(self, A: Sequence, b, c):
        """Common colour of all quads ``(a < a', b, c)`` over ``A``, else None."""
        common = None
        for a, a2 in combinations(A, 2):
            col = self(a, a2, b, c)
            if common is None:
                common = col
            elif col != common:
                return None
        return common


def _monochromatic(
    cols: _Colours, A: Sequence, B: Sequence, C: Sequence, q: int, colours: Sequence[QuadColour]
) -> Iterator[tuple]:
    """Yield ``(A', B', C', colour)`` with every quad of the given colour."""
    for A2 in colex_combinations(A, q):
        if q < 2:
            for col in colours:
                yield A2, tuple(B[:q]), tuple(C[:q]), col
            continue
        grid = {(b, c): cols.pair_colour(A2, b, c) for b in B for c in C}
        for col in colours:
            for B2 in colex_combinations(B, q):
                cs = [c for c in C if all(grid[(b, c)] == col for b in B2)]
                if len(cs) >= q:
                    yield A2, B2, tuple(cs[:q]), col


# ---------------------------------------------------------------------------
# Pairwise 1-page subdrawings
# ---------------------------------------------------------------------------

_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


class _PairMasks:
    """For a K2,2 {a<a', b<b'}: which signed orders [[sA . tB]] it agrees with."""

    def __init__(self, d: AbstractDrawing):
        self.d = d
        self.memo: dict = {}

    def __call__(self, a, a2, b, b2) -> int:
        key = (a, a2, b, b2)
        mask = self.memo.get(key)
        if mask is not None:
            return mask
        E = [edge(a, b), edge(a, b2), edge(a2, b), edge(a2, b2)]
        actual = {}
        for e, f in ((E[0], E[3]), (E[1], E[2])):
            r = self.d.crossing_rotation(e, f)
            if r is not None:
                actual[pair_key(e, f)] = r
        mask = 0
        for k, (s, t) in enumerate(_SIGNS):
            rho = CyclicOrder(concat([(s, (a, a2)), (t, (b, b2))]))
            if onepage_crossings(rho, E) == actual:
                mask |= 1 << k
        self.memo[key] = mask
        return mask

    def pair_mask(self, A: Sequence, B: Sequence) -> int:
        mask = 15
        for a, a2 in combinations(A, 2):
            for b, b2 in combinations(B, 2):
                mask &= self(a, a2, b, b2)
                if not mask:
                    return 0
        return mask


def _pair_signs(mask: int) -> tuple[int, int]:
    for k, st in enumerate(_SIGNS):
        if mask >> k & 1:
            return st
    raise AssertionError("empty mask")


def find_pairwise_onepage(
    d: AbstractDrawing, q: int, budget: int = DEFAULT_BUDGET
) -> PairwiseOnePageCertificate:
    """Size-``q`` subclasses such that every two classes form a 1-page pair."""
    classes = d.classes
    m = len(classes)
    if any(len(c) < q for c in classes):
        raise ValueError(f"every class needs at least {q} vertices")
    masks = _PairMasks(d)
    bud = _Budget(budget)
    chosen: list = []
    pair_masks: dict = {}

    def rec(k: int) -> bool:
        if k == m:
            return True
        for S in colex_combinations(classes[k], q):
            bud.tick()
            ok = True
            found = {}
            for i in range(k):
                mk = masks.pair_mask(chosen[i], S)
                if not mk:
                    ok = False
                    break
                found[i] = mk
            if not ok:
                continue
            chosen.append(S)
            for i, mk in found.items():
                pair_masks[(i, k)] = mk
            if rec(k + 1):
                return True
            chosen.pop()
        return False

    if not rec(0):
        raise NotFound(f"no pairwise 1-page subdrawing with classes of size {q}")
    values = {}
    for (i, k), mk in pair_masks.items():
        s, t = _pair_signs(mk)
        values[(k + 1, i + 1)] = s  # sign on class i inside [[s i . t k]]
        values[(i + 1, k + 1)] = t
    sign = SignFunction(m, values)
    out = tuple(Permutation(c) for c in chosen)
    for i, k in combinations(range(m), 2):
        rho = CyclicOrder(concat([(sign(k + 1, i + 1), out[i]), (sign(i + 1, k + 1), out[k])]))
        if not is_rho_drawing(d, rho, bipartite_edges(out[i], out[k])):
            raise AssertionError("pairwise certificate failed re-verification")
    return PairwiseOnePageCertificate(out, sign)


# ---------------------------------------------------------------------------
# Ordering classes on one side
# ---------------------------------------------------------------------------


def order_two(
    d: AbstractDrawing,
    A: Sequence,
    B: Sequence,
    C: Sequence,
    q: int,
    budget: int = DEFAULT_BUDGET,
    _cols: _Colours | None = None,
) -> tuple:
    """Subclasses with E(A', B' u C') 1-page, and which of B', C' comes first.

    Returns ``(A', B', C', which)`` with ``which`` in ``{"BC", "CB"}``.
    """
    cols = _cols or _Colours(d, _Budget(budget))
    E_of = lambda A2, B2, C2: bipartite_edges(A2, B2) | bipartite_edges(A2, C2)  # noqa: E731
    order = (QuadColour.ETA1, QuadColour.ETA2, QuadColour.ETA0, QuadColour.ETA3, QuadColour.ETA4)
    other = None
    for A2, B2, C2, col in _monochromatic(cols, A, B, C, q, order):
        if q < 2:
            cand = [("BC", _order(A2, B2, C2)), ("CB", _order(A2, C2, B2))]
        elif col == QuadColour.ETA1:
            cand = [("CB", _order(A2, C2, B2))]
        elif col == QuadColour.ETA2:
            cand = [("BC", _order(A2, B2, C2))]
        else:
            other = col if other is None else other
            continue
        for which, rho in cand:
            if is_rho_drawing(d, rho, E_of(A2, B2, C2)):
                return Permutation(A2), Permutation(B2), Permutation(C2), which
    raise NotFound(
        f"no monochromatic eta1/eta2 subclasses of size {q}",
        colour=other,
    )


def order_classes(
    d: AbstractDrawing,
    A: Sequence,
    Bs: Sequence[Sequence],
    q: int,
    budget: int = DEFAULT_BUDGET,
    schedule: StageSchedule | None = None,
) -> tuple:
    """Returns ``(A', [B'_1, ..., B'_r], pi)`` with ``[[A' . B'_pi(1) . ...]]`` 1-page.

    ``pi`` is a tuple of 1-based indices into ``Bs``.
    """
    schedule = schedule or StageSchedule()
    r = len(Bs)
    cols = _Colours(d, _Budget(budget))
    A_cur = Permutation(A)
    B_cur = [Permutation(b) for b in Bs]
    before: dict = {}
    for s, t in combinations(range(r), 2):
        size = min(len(A_cur), len(B_cur[s]), len(B_cur[t]))
        target = schedule.target(size, q)
        A_cur, B_cur[s], B_cur[t], which = order_two(d, A_cur, B_cur[s], B_cur[t], target, _cols=cols)
        before[(s, t)] = which == "BC"
        before[(t, s)] = not before[(s, t)]
    wins = [sum(before[(s, t)] for t in range(r) if t != s) for s in range(r)]
    if sorted(wins) != list(range(r)):
        raise TransitivityViolation(f"pairwise class orders form a cycle (scores {wins})")
    pi = tuple(sorted(range(r), key=lambda s: -wins[s]))
    A_out = Permutation(A_cur[:q])
    B_out = [Permutation(b[:q]) for b in B_cur]
    rho = _order(A_out, *(B_out[s] for s in pi))
    E = set()
    for b in B_out:
        E |= bipartite_edges(A_out, b)
    if not is_rho_drawing(d, rho, E):
        raise NotFound("merged side order failed verification")
    return A_out, B_out, tuple(s + 1 for s in pi)


def separate_sides(
    d: AbstractDrawing, A: Sequence, B: Sequence, C: Sequence, q: int, budget: int = DEFAULT_BUDGET
) -> tuple:
    """Subclasses with no crossing between E(A', B') and E(A', C')."""
    cols = _Colours(d, _Budget(budget))
    for A2, B2, C2, _ in _monochromatic(cols, A, B, C, q, (QuadColour.ETA0,)):
        EB, EC = bipartite_edges(A2, B2), bipartite_edges(A2, C2)
        if not any(d.crosses(e, f) for e in EB for f in EC):
            return Permutation(A2), Permutation(B2), Permutation(C2)
    raise NotFound(f"no crossing-free eta0 subclasses of size {q}")


def monochromatic_colours(
    d: AbstractDrawing, A: Sequence, B: Sequence, C: Sequence, q: int
) -> set[QuadColour]:
    """Every colour admitting a monochromatic size-``q`` configuration."""
    cols = _Colours(d, _Budget())
    found = set()
    for *_, col in _monochromatic(cols, A, B, C, q, tuple(QuadColour)):
        found.add(col)
        if len(found) == len(QuadColour):
            break
    return found


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------


def _restrict_to(classes: list, n: int) -> list:
    return [Permutation(c[:n]) for c in classes]


def extract_canonical(
    d: AbstractDrawing,
    n: int,
    schedule: StageSchedule | None = None,
    budget: int = DEFAULT_BUDGET,
) -> ExtractionResult:
    schedule = schedule or StageSchedule()
    m = len(d.classes)
    sizes = {len(c) for c in d.classes}
    if len(sizes) != 1:
        raise ValueError("classes must have equal size")
    (N,) = sizes
    if N < n:
        raise NotFound(f"classes of size {N} are smaller than the target {n}")

    if n == 1:
        # a single vertex per class carries no order information beyond its
        # rotation, so the template is read off directly
        final = tuple(Permutation(c[:1]) for c in d.classes)
        t = template_of(d, final)
        if isinstance(t, NotCanonical):
            raise NotFound(f"one-vertex subdrawing is not canonical: {t.reason}")
        return ExtractionResult(final, t, verify_canonical(d, final, t))

    cert = find_pairwise_onepage(d, schedule.target(N, n), budget)
    sigma = cert.sign
    classes = list(cert.classes)

    def oriented(j: int, sign: int) -> Permutation:
        return _signed(sign, classes[j - 1])

    plus: list = [()] * m
    minus: list = [()] * m
    for side in (1, -1):
        for i in range(1, m + 1):
            blocks = [j for j in range(1, m + 1) if j != i and sigma(j, i) == side]
            if not blocks:
                continue
            size = len(classes[0])
            target = schedule.target(size, n)
            A = oriented(i, side)
            Bs = [oriented(j, sigma(i, j)) for j in blocks]
            A2, B2s, pi = order_classes(d, A, Bs, target, budget, schedule)
            classes[i - 1] = _signed(side, A2)
            for j, b in zip(blocks, B2s):
                classes[j - 1] = _signed(sigma(i, j), b)
            keep = set(blocks) | {i}
            for k in range(1, m + 1):
                if k not in keep:
                    classes[k - 1] = Permutation(classes[k - 1][:target])
            order = tuple(blocks[s - 1] for s in pi)
            (plus if side == 1 else minus)[i - 1] = order

    for i in range(1, m + 1):
        for j in plus[i - 1]:
            for k in minus[i - 1]:
                size = len(classes[0])
                target = schedule.target(size, n)
                A2, B2, C2 = separate_sides(
                    d, classes[i - 1], oriented(j, sigma(i, j)), oriented(k, sigma(i, k)), target, budget
                )
                classes[i - 1] = A2
                classes[j - 1] = _signed(sigma(i, j), B2)
                classes[k - 1] = _signed(sigma(i, k), C2)
                for l in range(1, m + 1):
                    if l not in (i, j, k):
                        classes[l - 1] = Permutation(classes[l - 1][:target])

    final = tuple(_restrict_to(classes, n))
    template = Template(tuple(plus), tuple(minus))
    report = verify_canonical(d, final, template)
    if report:
        raise NotFound("extracted classes failed canonicity: " + "; ".join(map(str, report[:3])))
    return ExtractionResult(final, template, report)


def onepage_type(t: Template) -> tuple[int, int]:
    """For m = 2: the signs ``(s, t)`` with E(1, 2) a ``[[s1 . t2]]``-drawing."""
    if t.m != 2:
        raise ValueError("defined for two classes only")
    s = 1 if 2 in t.plus[0] else -1
    u = 1 if 1 in t.plus[1] else -1
    return s, u


# ---------------------------------------------------------------------------
# Drawings of K_{2,3}
# ---------------------------------------------------------------------------


@dataclass
class K23Summary:
    """Drawings of K_{2,3} in which every K_{2,2} has exactly one crossing."""

    equal_classes: int  # iso classes when both degree-3 vertices rotate alike
    distinct_classes: int  # iso classes when their rotations differ
    completions: dict  # system key -> number of crossing patterns
    parities: dict  # system key -> set of crossing-count parities
    codes: dict = field(default_factory=dict)  # "equal"/"distinct" -> set of map codes


def every_k22_crosses_once(d: AbstractDrawing, A: Sequence[str], B: Sequence[str]) -> bool:
    for a, a2 in combinations(A, 2):
        for b, b2 in combinations(B, 2):
            k = d.crosses(edge(a, b), edge(a2, b2)) + d.crosses(edge(a, b2), edge(a2, b))
            if k != 1:
                return False
    return True


def k23_catalogue(budget: int = DEFAULT_BUDGET) -> K23Summary:
    A = ("1(1)", "1(2)")
    B = ("2(1)", "2(2)", "2(3)")
    kind = {v: v[0] for v in A + B}
    codes: dict = {"equal": set(), "distinct": set()}
    completions: dict = {}
    parities: dict = {}
    for rs in bipartite_systems(A, B):
        label = "equal" if rs.rotation[A[0]] == rs.rotation[A[1]] else "distinct"
        patterns = set()
        par = set()
        for w in iter_witnesses(rs, budget):
            d = crossings_of_witness(w)
            patterns.add(d.crossing_data())
            par.add(len(d.crossing_index) % 2)
            if every_k22_crosses_once(d, A, B):
                codes[label].add(witness_code(w, kind))
        completions[rs.key()] = len(patterns)
        parities[rs.key()] = par
    return K23Summary(len(codes["equal"]), len(codes["distinct"]), completions, parities, codes)
