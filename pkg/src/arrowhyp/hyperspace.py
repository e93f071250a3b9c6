"""Finite unions of closed intervals, finite sets, and the tuple maps onto them.

``varrho`` sends a non-decreasing tuple ``(x0, x1, ..., x_{2m-1})`` to the
union of the intervals ``[x_{2i}, x_{2i+1}]``; ``rho_fin`` sends a
non-decreasing tuple to its set of entries.  Both quotient relations are
decided by comparing canonical forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyInput, NotRepresentable, OrderViolation, SpaceMismatch
from .order import (
    ClosedInterval,
    Point,
    Space,
    check_space,
    merge_cuts,
    successor,
)


@dataclass(frozen=True)
class ClosedUnion:
    """Canonical union of closed intervals.

    Components are sorted, pairwise disjoint and never adjacent (in the
    double arrow ``[.., <a,0>]`` and ``[<a,1>, ..]`` would be one interval).
    Use :func:`canonicalize` to build one from arbitrary intervals.
    """

    space: Space
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise EmptyInput("a closed union needs at least one component")
        for c in comps:
            if c.space is not self.space:
                raise SpaceMismatch("component space does not match union")
        for a, b in zip(comps, comps[1:]):
            if not (b.lo > a.hi and b.lo != successor(a.hi)):
                raise ValueError(f"components {a} and {b} are not separated")

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __contains__(self, p: Point) -> bool:
        return any(p in c for c in self.components)

    def cuts(self) -> tuple:
        return merge_cuts(c.cuts() for c in self.components)

    @property
    def endpoints(self) -> list:
        return [p for c in self.components for p in (c.lo, c.hi)]

    def __str__(self):
        return " u ".join(str(c) for c in self.components)


@dataclass(frozen=True)
class DeltaTuple:
    """A non-decreasing tuple of points."""

    space: Space
    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise EmptyInput("empty tuple")
        for p in entries:
            if p.space is not self.space:
                raise SpaceMismatch("entry space does not match tuple")
        for i, (a, b) in enumerate(zip(entries, entries[1:])):
            if b < a:
                raise OrderViolation(f"entries {i} and {i + 1} decrease: {a} > {b}")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.entries) + ")"


@dataclass(frozen=True)
class FiniteSet:
    space: Space
    elements: tuple

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if not els:
            raise EmptyInput("empty finite set")
        for p in els:
            if p.space is not self.space:
                raise SpaceMismatch("element space does not match set")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError("finite set elements must be strictly increasing")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.elements) + "}"


def delta_tuple(points: Sequence[Point]) -> DeltaTuple:
    points = list(points)
    if not points:
        raise EmptyInput("empty tuple")
    return DeltaTuple(check_space(*points), points)


def finite_set(points: Iterable[Point]) -> FiniteSet:
    points = sorted(set(points), key=lambda p: p.key)
    if not points:
        raise EmptyInput("empty input")
    return FiniteSet(check_space(*points), points)


def canonicalize(raw: Iterable[ClosedInterval]) -> ClosedUnion:
    """Merge overlapping and adjacent intervals into the canonical union."""
    raw = list(raw)
    if not raw:
        raise EmptyInput("empty input")
    space = check_space(*raw)
    merged: list = []
    for iv in sorted(raw, key=lambda c: (c.lo.key, c.hi.key)):
        if merged:
            last = merged[-1]
            if iv.lo <= last.hi or iv.lo == successor(last.hi):
                if iv.hi > last.hi:
                    merged[-1] = ClosedInterval(last.lo, iv.hi)
                continue
        merged.append(iv)
    return ClosedUnion(space, merged)


def union_from_cuts(space: Space, ranges) -> ClosedUnion:
    """The closed union whose points are exactly those in ``ranges``.

    Raises :class:`NotRepresentable` when some range has no greatest point
    (a Sorgenfrey ``[c, d[`` block, closed in that topology but not a closed
    interval).
    """
    comps = []
    for a, b in merge_cuts(ranges):
        if a[2] != 0:
            raise NotRepresentable(f"range starting at {a} has no least point")
        lo = Point(space, a[0], a[1])
        if b[2] == 1:
            hi = Point(space, b[0], 1)
        elif space is Space.ARROW and b[0] > 0:
            hi = Point(space, b[0], 0)
        else:
            raise NotRepresentable(f"range ending at {b} has no greatest point")
        comps.append(ClosedInterval(lo, hi))
    if not comps:
        raise EmptyInput("empty set")
    return ClosedUnion(space, comps)


def varrho(x: DeltaTuple) -> ClosedUnion:
    if len(x) % 2:
        raise ValueError(f"varrho needs an even-length tuple, got length {len(x)}")
    e = x.entries
    return canonicalize(ClosedInterval(e[2 * i], e[2 * i + 1]) for i in range(len(e) // 2))


def _same_shape(x: DeltaTuple, y: DeltaTuple):
    if x.space is not y.space:
        raise SpaceMismatch("tuples live in different spaces")
    if len(x) != len(y):
        raise ValueError(f"tuple lengths differ: {len(x)} vs {len(y)}")


def equiv_approx(x: DeltaTuple, y: DeltaTuple) -> bool:
    _same_shape(x, y)
    return varrho(x) == varrho(y)


def canonical_rep(u: ClosedUnion, m: int) -> DeltaTuple:
    """Endpoints of ``u`` padded to length 2m by repeating the last one."""
    if m < 1:
        raise ValueError("m must be positive")
    if len(u) > m:
        raise ValueError(f"{len(u)} components do not fit in m={m}")
    pts = u.endpoints
    pts += [pts[-1]] * (2 * m - len(pts))
    return DeltaTuple(u.space, pts)


def rho_fin(x: DeltaTuple) -> FiniteSet:
    return finite_set(x.entries)


def equiv_sim(x: DeltaTuple, y: DeltaTuple) -> bool:
    _same_shape(x, y)
    return rho_fin(x) == rho_fin(y)


def f2_to_c1(s: FiniteSet) -> ClosedUnion:
    """{a, b} -> [a, b]; a singleton {a} goes to [a, a]."""
    if len(s) > 2:
        raise ValueError(f"only sets of size <= 2 correspond to intervals, got {len(s)}")
    els = s.elements
    return ClosedUnion(s.space, (ClosedInterval(els[0], els[-1]),))


def c1_to_f2(u: ClosedUnion) -> FiniteSet:
    if len(u) != 1:
        raise ValueError(f"expected a single interval, got {len(u)} components")
    (c,) = u.components
    return finite_set((c.lo, c.hi))


def bridge(value):
    """Dispatch :func:`f2_to_c1` / :func:`c1_to_f2` on the argument's type."""
    if isinstance(value, FiniteSet):
        return f2_to_c1(value)
    if isinstance(value, ClosedUnion):
        return c1_to_f2(value)
    raise TypeError(f"cannot bridge {type(value).__name__}")

