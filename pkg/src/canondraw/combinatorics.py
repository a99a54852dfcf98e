"""Linear and cyclic permutations of vertex identifiers.

Partite classes are ordered, so most objects in this package are built from
two primitives: a :class:`Permutation` (a tuple of distinct items) and a
:class:`CyclicOrder` (the same, up to rotation but not reflection).
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from typing import NamedTuple

from .errors import MissingVertexError, OverlapError

__all__ = [
    "Permutation",
    "CyclicOrder",
    "SignedClass",
    "reverse",
    "concat",
    "is_subpermutation",
    "interleaves",
]


class Permutation(tuple):
    """An ordered sequence of pairwise distinct items."""

    __slots__ = ()

    def __new__(cls, items: Iterable[Hashable] = ()):
        self = super().__new__(cls, items)
        if len(set(self)) != len(self):
            raise ValueError(f"repeated item in permutation {tuple(self)!r}")
        return self

    def __repr__(self) -> str:
        return "<" + ", ".join(map(str, self)) + ">"

    def reversed(self) -> Permutation:
        return Permutation(self[::-1])

    def signed(self, sign: int) -> Permutation:
        return self if sign > 0 else self.reversed()

    def precedes(self, a, b) -> bool:
        """``a <_P b``."""
        return self.index(a) < self.index(b)

    def restrict(self, keep: Iterable[Hashable]) -> Permutation:
        keep = set(keep)
        return Permutation(x for x in self if x in keep)


class CyclicOrder:
    """Distinct items up to rotation.

    The stored tuple starts at the smallest item, which is also the
    serialized form.
    """

    __slots__ = ("items", "_pos")

    def __init__(self, items: Iterable[Hashable] = ()):
        seq = tuple(items)
        if len(set(seq)) != len(seq):
            raise ValueError(f"repeated item in cyclic order {seq!r}")
        if seq:
            k = seq.index(min(seq))
            seq = seq[k:] + seq[:k]
        self.items: tuple = seq
        self._pos = None

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, x) -> bool:
        return x in self.positions

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicOrder):
            return NotImplemented
        return self.items == other.items

    def __hash__(self) -> int:
        return hash(("cyc", self.items))

    def __repr__(self) -> str:
        return "[[" + ", ".join(map(str, self.items)) + "]]"

    @property
    def positions(self) -> dict:
        if self._pos is None:
            self._pos = {x: i for i, x in enumerate(self.items)}
        return self._pos

    def starting_at(self, x) -> tuple:
        """The items as a linear sequence beginning with ``x``."""
        k = self.positions[x]
        return self.items[k:] + self.items[:k]

    def after(self, x) -> tuple:
        """All other items, in cyclic order starting right after ``x``."""
        return self.starting_at(x)[1:]

    def successor(self, x):
        k = self.positions[x]
        return self.items[(k + 1) % len(self.items)]

    def predecessor(self, x):
        k = self.positions[x]
        return self.items[k - 1]

    def restrict(self, keep: Iterable[Hashable]) -> CyclicOrder:
        keep = set(keep)
        return CyclicOrder(x for x in self.items if x in keep)

    def reversed(self) -> CyclicOrder:
        return CyclicOrder(self.items[::-1])

    def relabel(self, mapping) -> CyclicOrder:
        return CyclicOrder(mapping[x] for x in self.items)


class SignedClass(NamedTuple):
    """``sign * class_index`` as it appears inside a bounding order."""

    sign: int
    class_index: int

    @classmethod
    def make(cls, sign: int, class_index: int) -> SignedClass:
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign!r}")
        return cls(sign, class_index)


def reverse(p: Sequence) -> Permutation:
    return Permutation(tuple(p)[::-1])


def concat(parts: Iterable[tuple[int, Sequence]]) -> Permutation:
    """Concatenate ``(sign, permutation)`` parts, reversing those with sign -1."""
    out: list = []
    seen: set = set()
    for sign, p in parts:
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign!r}")
        block = tuple(p) if sign > 0 else tuple(p)[::-1]
        clash = seen.intersection(block)
        if clash:
            raise OverlapError(f"parts share {sorted(map(str, clash))}")
        seen.update(block)
        out.extend(block)
    return Permutation(out)


def is_subpermutation(small: Sequence, big: Sequence) -> bool:
    it = iter(big)
    return all(any(x == y for y in it) for x in small)


def interleaves(c: CyclicOrder, pair1: tuple, pair2: tuple) -> bool:
    """Whether the chords ``pair1`` and ``pair2`` alternate around ``c``."""
    pos = c.positions
    try:
        a, b = sorted((pos[pair1[0]], pos[pair1[1]]))
        x, y = pos[pair2[0]], pos[pair2[1]]
    except KeyError as exc:
        raise MissingVertexError(exc.args[0]) from None
    return (a < x < b) != (a < y < b)
