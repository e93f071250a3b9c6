"""Exact piecewise rational-affine autohomeomorphisms.

A homeomorphism is a finite list of :class:`AffinePiece` plus zero or more
:class:`Tail` schemes.  Each piece maps a clopen *cell* by ``t -> s*t + o``
on the coordinate; in the double arrow a negative slope also flips the side
bit, which is what makes the map continuous there.  A cell with ends u < v
is ``[<u,1>, <v,0>]`` in the double arrow and ``[u, v[`` in the Sorgenfrey
line; both are the cut range ``[(u,1,0), (v,1,0))``.

A tail accumulates infinitely many blocks at one limit point.  It is given
by nested clopen neighbourhoods ``nbhd(0) > nbhd(1) > ...`` shrinking to the
limit, their exact images ``image_nbhd(k)``, and the finitely many pieces of
each block ``nbhd(k-1) minus nbhd(k)``.  Everything is generated on demand
and memoized.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import DomainError, PartitionViolation, SpaceMismatch
from .hyperspace import ClosedUnion, union_from_cuts
from .order import (
    ARROW,
    END,
    START,
    SORGENFREY,
    ClosedInterval,
    Point,
    Space,
    check_space,
    covers_cuts,
    in_cuts,
    intersect_cuts,
    is_clopen,
    lower_cut,
    merge_cuts,
    subtract_cuts,
    upper_cut,
)

WHOLE = (START, END)
MAX_DEPTH = 100_000


class NotClopen(DomainError):
    pass


def cell(u, v) -> tuple:
    """The clopen cell with coordinate ends u < v, as a cut range."""
    u, v = Fraction(u), Fraction(v)
    if not u < v:
        raise ValueError(f"empty cell ({u}, {v})")
    return ((u, 1, 0), (v, 1, 0))


def cell_ends(rng) -> tuple:
    (u, su, eu), (v, sv, ev) = rng
    if (su, eu, sv, ev) != (1, 0, 1, 0):
        raise NotClopen(f"{rng} is not a clopen cell")
    return u, v


def cell_of_interval(J: ClosedInterval) -> tuple:
    if J.space is ARROW and not is_clopen(J):
        raise NotClopen(f"{J} is not clopen")
    if J.space is ARROW:
        return (lower_cut(J.lo), upper_cut(J.hi))
    raise NotClopen("closed Sorgenfrey intervals are not cells; pass a cut range")


_FLIP = {(0, 0): (1, 1), (1, 0): (1, 0), (1, 1): (0, 0)}


@dataclass(frozen=True)
class AffinePiece:
    source: tuple
    slope: Fraction
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if self.slope == 0:
            raise ValueError("slope must be nonzero")

    def map_cut(self, c):
        x, side, e = c
        y = self.slope * x + self.offset
        if self.slope > 0:
            return (y, side, e)
        fs, fe = _FLIP[(side, e)]
        return (y, fs, fe)

    def map_range(self, rng):
        a, b = rng
        if self.slope > 0:
            return (self.map_cut(a), self.map_cut(b))
        return (self.map_cut(b), self.map_cut(a))

    @property
    def image(self):
        return self.map_range(self.source)

    def contains(self, p: Point) -> bool:
        return in_cuts(p, (self.source,))

    def apply(self, p: Point) -> Point:
        side = p.side if self.slope > 0 else 1 - p.side
        return Point(p.space, self.slope * p.coord + self.offset, side)

    def inverse(self) -> "AffinePiece":
        return AffinePiece(self.image, 1 / self.slope, -self.offset / self.slope)

    def restrict(self, ranges) -> list:
        return [AffinePiece(r, self.slope, self.offset) for r in intersect_cuts((self.source,), ranges)]

    def then(self, other: "AffinePiece") -> list:
        """Pieces of ``other o self`` on the part of self mapped into other."""
        back = self.inverse()
        s, o = other.slope * self.slope, other.slope * self.offset + other.offset
        return [AffinePiece(back.map_range(r), s, o) for r in intersect_cuts((self.image,), (other.source,))]


def simplify(pieces) -> tuple:
    """Sort pieces and fuse touching neighbours that share one affine map."""
    out: list = []
    for p in sorted(pieces, key=lambda p: p.source):
        if out and out[-1].source[1] == p.source[0] and (out[-1].slope, out[-1].offset) == (p.slope, p.offset):
            out[-1] = AffinePiece((out[-1].source[0], p.source[1]), p.slope, p.offset)
        else:
            out.append(p)
    return tuple(out)


class Tail:
    """Blocks accumulating at ``limit``, mapped onto blocks at ``image_limit``.

    ``nbhd(k)`` and ``image_nbhd(k)`` return merged cut ranges; ``block(k)``
    for k >= 1 returns the pieces covering ``nbhd(k-1)`` minus ``nbhd(k)``.
    Results are memoized under a per-tail lock, so evaluation is safe from
    several threads.
    """

    def __init__(self, limit: Point, image_limit: Point, nbhd: Callable, image_nbhd: Callable,
                 block: Callable, info: Optional[dict] = None):
        self.limit = limit
        self.image_limit = image_limit
        self._fns = {"nbhd": nbhd, "image_nbhd": image_nbhd, "block": block}
        self._memo: dict = {}
        self._lock = threading.RLock()
        self.info = info or {}

    def _get(self, name: str, k: int):
        key = (name, k)
        with self._lock:
            if key not in self._memo:
                self._memo[key] = self._fns[name](k)
            return self._memo[key]

    def nbhd(self, k: int):
        return self._get("nbhd", k)

    def image_nbhd(self, k: int):
        return self._get("image_nbhd", k)

    def block(self, k: int):
        if k < 1:
            raise ValueError("blocks are numbered from 1")
        return self._get("block", k)

    def block_index(self, p: Point) -> int:
        """The k with p in block k; p must be in nbhd(0) and differ from the limit."""
        k = 1
        while in_cuts(p, self.nbhd(k)):
            k += 1
            if k > MAX_DEPTH:
                raise RuntimeError(f"tail neighbourhoods do not shrink away from {p}")
        return k

    def inverse(self) -> "Tail":
        return Tail(self.image_limit, self.limit, self.image_nbhd, self.nbhd,
                    lambda k: simplify(p.inverse() for p in self.block(k)),
                    dict(self.info, inverted=True))

    def __repr__(self):
        return f"Tail({self.limit} -> {self.image_limit})"


def _check_partition(ranges, what: str):
    ordered = sorted(ranges)
    for a, b in zip(ordered, ordered[1:]):
        if b[0] < a[1]:
            raise PartitionViolation(f"{what} overlap: {a} and {b}")
    if merge_cuts(ordered) != (WHOLE,):
        raise PartitionViolation(f"{what} do not cover the space")


def _skip_covered(t: Tail, ranges) -> int:
    """Least k >= 1 such that block k may meet ``ranges``.

    Blocks 1..k lie outside nbhd(k), so every block below the first
    neighbourhood not covering ``ranges`` can be skipped; the neighbourhoods
    are nested, which makes the search monotone.
    """
    if not covers_cuts(t.nbhd(1), ranges):
        return 1
    lo, hi = 1, 2
    while covers_cuts(t.nbhd(hi), ranges):
        lo, hi = hi, 2 * hi
        if hi > MAX_DEPTH:
            raise RuntimeError("range set does not separate from the tail limit")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if covers_cuts(t.nbhd(mid), ranges):
            lo = mid
        else:
            hi = mid
    return lo + 1


@dataclass(frozen=True, eq=False)
class PiecewiseHomeo:
    space: Space
    pieces: tuple
    tails: tuple = ()
    origin: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "tails", tuple(self.tails))
        if self.space is SORGENFREY and any(p.slope < 0 for p in self.pieces):
            raise ValueError("order-reversing pieces are not continuous on the Sorgenfrey line")
        for t in self.tails:
            check_space(t.limit, t.image_limit, self)
        _check_partition([p.source for p in self.pieces] + [r for t in self.tails for r in t.nbhd(0)], "piece sources")
        _check_partition([p.image for p in self.pieces] + [r for t in self.tails for r in t.image_nbhd(0)], "piece images")

    # -- evaluation ---------------------------------------------------------

    def locate(self, p: Point):
        """The piece whose source holds p, or the tail whose limit is p."""
        for piece in self.pieces:
            if piece.contains(p):
                return piece
        for t in self.tails:
            if in_cuts(p, t.nbhd(0)):
                if p == t.limit:
                    return t
                for piece in t.block(t.block_index(p)):
                    if piece.contains(p):
                        return piece
        raise PartitionViolation(f"no piece contains {p}")

    def __call__(self, p: Point) -> Point:
        if p.space is not self.space:
            raise SpaceMismatch("point and homeomorphism live in different spaces")
        where = self.locate(p)
        if isinstance(where, Tail):
            return where.image_limit
        return where.apply(p)

    @property
    def limits(self) -> list:
        return [t.limit for t in self.tails]

    # -- restriction and images -----------------------------------------

    def pieces_over(self, ranges) -> list:
        """Pieces restricted to ``ranges``, which must avoid every tail limit."""
        ranges = merge_cuts(ranges)
        out = []
        for piece in self.pieces:
            out += piece.restrict(ranges)
        for t in self.tails:
            if in_cuts(t.limit, ranges):
                raise ValueError(f"range set contains the tail limit {t.limit}")
            if not intersect_cuts(t.nbhd(0), ranges):
                continue
            k = _skip_covered(t, ranges)
            while True:
                for piece in t.block(k):
                    out += piece.restrict(ranges)
                if not intersect_cuts(t.nbhd(k), ranges):
                    break
                k += 1
                if k > MAX_DEPTH:
                    raise RuntimeError("range set does not separate from the tail limit")
        return out

    def image_ranges(self, ranges) -> tuple:
        """Exact image of a finite union of cut ranges."""
        ranges = merge_cuts(ranges)
        for t in self.tails:
            if not in_cuts(t.limit, ranges):
                continue
            point = (lower_cut(t.limit), upper_cut(t.limit))
            k = 0
            while True:
                near = intersect_cuts(t.nbhd(k), ranges)
                if near == t.nbhd(k):
                    core = t.image_nbhd(k)
                    break
                if near == (point,):
                    core = ((lower_cut(t.image_limit), upper_cut(t.image_limit)),)
                    break
                k += 1
                if k > MAX_DEPTH:
                    raise RuntimeError(f"cannot isolate tail limit {t.limit}")
            rest = subtract_cuts(ranges, intersect_cuts(t.nbhd(k), ranges))
            return merge_cuts(core + self.image_ranges(rest))
        return merge_cuts(p.image for p in self.pieces_over(ranges))

    def image_closed_union(self, F: ClosedUnion) -> ClosedUnion:
        check_space(F, self)
        return union_from_cuts(self.space, self.image_ranges(F.cuts()))

    # -- algebra ------------------------------------------------------------

    def inverse(self) -> "PiecewiseHomeo":
        return PiecewiseHomeo(self.space, simplify(p.inverse() for p in self.pieces),
                              tuple(t.inverse() for t in self.tails), origin=("inverse", self))

    def then(self, other: "PiecewiseHomeo") -> "PiecewiseHomeo":
        return compose(self, other)


def identity(space: Space) -> PiecewiseHomeo:
    return PiecewiseHomeo(space, (AffinePiece(WHOLE, 1, 0),))


def _identity_outside(ranges) -> list:
    return [AffinePiece(r, 1, 0) for r in subtract_cuts((WHOLE,), ranges)]


def reflection(space: Space, rng) -> PiecewiseHomeo:
    """Order reversal of a double-arrow cell, identity elsewhere."""
    if space is not ARROW:
        raise ValueError("the Sorgenfrey line admits no order reversal")
    u, v = cell_ends(rng)
    return PiecewiseHomeo(space, simplify([AffinePiece(rng, -1, u + v)] + _identity_outside((rng,))))


def affine_cell_map(src, dst) -> AffinePiece:
    """The increasing affine piece carrying cell ``src`` onto cell ``dst``."""
    (u, v), (a, b) = cell_ends(src), cell_ends(dst)
    s = (b - a) / (v - u)
    return AffinePiece(src, s, a - s * u)


def point_to_min(J, z: Point) -> PiecewiseHomeo:
    """A homeomorphism of the cell J onto itself sending z to min J.

    ``J`` is a clopen :class:`ClosedInterval` of the double arrow or a cell
    (cut range) of either space.  Outside J the map is the identity.
    """
    if isinstance(J, ClosedInterval):
        space = check_space(J, z)
        rng = cell_of_interval(J)
    else:
        space = z.space
        rng = J
    u, v = cell_ends(rng)
    if not in_cuts(z, (rng,)):
        raise DomainError(f"{z} is not in the cell ({u}, {v})")
    x = z.coord
    if x == u:
        inner = [AffinePiece(rng, 1, 0)]
    elif z.side == 1:
        # [z, max J] moves to the front, [min J, pred z] to the back
        inner = [AffinePiece(cell(x, v), 1, u - x), AffinePiece(cell(u, x), 1, v - x)]
    else:
        # reverse [min J, z] so that z lands on min J
        inner = [AffinePiece(cell(u, x), -1, u + x)]
        if x < v:
            inner.append(AffinePiece(cell(x, v), 1, 0))
    return PiecewiseHomeo(space, simplify(inner + _identity_outside((rng,))))


# -- composition ----------------------------------------------------------------

def _compose_pieces_over(h1: PiecewiseHomeo, h2: PiecewiseHomeo, ranges) -> tuple:
    out = []
    for a in h1.pieces_over(ranges):
        for b in h2.pieces_over((a.image,)):
            out += a.then(b)
    return simplify(out)


def _first(pred, what: str) -> int:
    k = 0
    while not pred(k):
        k += 1
        if k > MAX_DEPTH:
            raise RuntimeError(f"no neighbourhood found: {what}")
    return k


class _Junction:
    """Neighbourhoods of one accumulation point of ``h2 o h1``.

    ``c`` is a tail limit of h1, the preimage of a tail limit of h2, or both;
    ``q = h1(c)``.  ``A(k)`` are nested neighbourhoods of q in the middle
    space whose images under h2 are known exactly, and ``N(k)`` their exact
    preimages under h1.
    """

    def __init__(self, h1, h2, inv1, c, q, t1, t2):
        self.h1, self.h2, self.inv1 = h1, h2, inv1
        self.c, self.q, self.t1, self.t2 = c, q, t1, t2
        self.offset = 0
        self._j = 0
        self._lock = threading.Lock()
        if t1 is not None and t2 is not None:
            self.image_limit = t2.image_limit
        elif t1 is not None:
            self.P = h2.locate(q)
            self.shift = _first(lambda k: covers_cuts((self.P.source,), t1.image_nbhd(k)), "h2 piece around q")
            self.image_limit = self.P.apply(q)
        else:
            self.Q = h1.locate(c)
            self.Qinv = self.Q.inverse()
            self.shift = _first(lambda k: covers_cuts((self.Q.image,), t2.nbhd(k)), "h1 piece around c")
            self.image_limit = t2.image_limit

    def A(self, k):
        k += self.offset
        if self.t2 is None:
            return self.t1.image_nbhd(k + self.shift)
        if self.t1 is None:
            return self.t2.nbhd(k + self.shift)
        return self.t2.nbhd(k)

    def image(self, k):
        if self.t2 is None:
            return merge_cuts(self.P.map_range(r) for r in self.A(k))
        k += self.offset
        return self.t2.image_nbhd(k + (self.shift if self.t1 is None else 0))

    def N(self, k):
        if self.t2 is None:
            return self.t1.nbhd(k + self.offset + self.shift)
        A = self.A(k)
        if self.t1 is None:
            return merge_cuts(self.Qinv.map_range(r) for r in A)
        with self._lock:
            j = self._j
        while not covers_cuts(A, self.t1.image_nbhd(j)):
            j += 1
            if j > MAX_DEPTH:
                raise RuntimeError("tail images never enter the neighbourhood")
        with self._lock:
            self._j = max(self._j, j)
        extra = subtract_cuts(A, self.t1.image_nbhd(j))
        pulled = [p.image for p in self.inv1.pieces_over(extra)] if extra else []
        return merge_cuts(tuple(self.t1.nbhd(j)) + tuple(pulled))

    def tail(self) -> Tail:
        h1, h2 = self.h1, self.h2
        return Tail(
            self.c, self.image_limit, self.N, self.image,
            lambda k: _compose_pieces_over(h1, h2, subtract_cuts(self.N(k - 1), self.N(k))),
            {"kind": "composite"},
        )


def _separate(junctions):
    """Shrink neighbourhoods until they are pairwise disjoint."""
    changed = True
    while changed:
        changed = False
        for j in junctions:
            others = [o.q for o in junctions if o is not j]
            while any(in_cuts(q, j.A(0)) for q in others):
                j.offset += 1
                changed = True
        for i, a in enumerate(junctions):
            for b in junctions[i + 1:]:
                if intersect_cuts(a.A(0), b.A(0)):
                    a.offset += 1
                    b.offset += 1
                    changed = True


def compose(h1: PiecewiseHomeo, h2: PiecewiseHomeo) -> PiecewiseHomeo:
    """The homeomorphism ``p -> h2(h1(p))``."""
    space = check_space(h1, h2)
    inv1 = h1.inverse() if h2.tails else None
    found: dict = {}
    for t in h1.tails:
        found[t.limit] = [t.limit, t.image_limit, t, None]
    for t in h2.tails:
        c = inv1(t.limit)
        if c in found:
            found[c][3] = t
        else:
            found[c] = [c, t.limit, None, t]
    junctions = [_Junction(h1, h2, inv1, *v) for v in found.values()]
    _separate(junctions)
    tails = tuple(j.tail() for j in junctions)
    rest = subtract_cuts((WHOLE,), [r for j in junctions for r in j.N(0)])
    pieces = _compose_pieces_over(h1, h2, rest) if rest else ()
    return PiecewiseHomeo(space, pieces, tails, origin=("compose", h1, h2))


def inverse(h: PiecewiseHomeo) -> PiecewiseHomeo:
    return h.inverse()


def evaluate(h: PiecewiseHomeo, p: Point) -> Point:
    return h(p)


def image_closed_union(h: PiecewiseHomeo, F: ClosedUnion) -> ClosedUnion:
    return h.image_closed_union(F)
