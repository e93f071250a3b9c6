"""Exact points of the double arrow and the Sorgenfrey line.

Both spaces share one point type.  A double-arrow point is ``<a, side>``
with ``side`` in {0, 1}; ``<a,0>`` has the immediate successor ``<a,1>``.
A Sorgenfrey point is stored with ``side == 1``: the Sorgenfrey line
``[0,1[`` is order-isomorphic to the upper copy ``[0,1[ x {1}`` of the
arrow, which lets the two spaces share comparison and interval code.

Interval arithmetic is done on *cuts*.  A cut is a gap in the order,
encoded as ``(coord, side, e)`` where ``e = 0`` means "just below the point
``<coord, side>``" and ``e = 1`` means "just above it".  Cuts are kept
normalized (the gap between ``<a,0>`` and ``<a,1>`` is always written
``(a, 1, 0)``), so every set of points we care about is a finite union of
half-open cut ranges ``[c, d)`` and plain tuple comparison decides
everything.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Sequence

from .errors import OrderViolation, ParseError, SpaceMismatch


class Space(str, enum.Enum):
    ARROW = "arrow"
    SORGENFREY = "sorgenfrey"


ARROW = Space.ARROW
SORGENFREY = Space.SORGENFREY

Cut = tuple  # (Fraction, int, int)
CutRange = tuple  # (Cut, Cut), half-open

START: Cut = (Fraction(0), 1, 0)
END: Cut = (Fraction(1), 1, 0)


@total_ordering
@dataclass(frozen=True)
class Point:
    space: Space
    coord: Fraction
    side: int = 1

    def __post_init__(self):
        if not isinstance(self.coord, Fraction):
            object.__setattr__(self, "coord", Fraction(self.coord))
        c, s = self.coord, self.side
        if self.space is ARROW:
            if s not in (0, 1):
                raise ValueError(f"side bit must be 0 or 1, got {s!r}")
            if not (0 <= c <= 1) or (s == 0 and c == 0) or (s == 1 and c == 1):
                raise ValueError(f"<{c},{s}> is not a point of the double arrow")
        else:
            if s != 1:
                raise ValueError("Sorgenfrey points carry no side bit")
            if not (0 <= c < 1):
                raise ValueError(f"{c} is not in [0,1[")

    @property
    def key(self):
        return (self.coord, self.side)

    def __lt__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if other.space is not self.space:
            raise SpaceMismatch(f"cannot compare {self.space.value} and {other.space.value} points")
        return self.key < other.key

    def __str__(self):
        return format_point(self)

    def __repr__(self):
        return f"Point({format_point(self)!r})"


def arrow_point(coord, side) -> Point:
    return Point(ARROW, Fraction(coord), side)


def sorgenfrey_point(coord) -> Point:
    return Point(SORGENFREY, Fraction(coord), 1)


def space_min(space: Space) -> Point:
    return Point(space, Fraction(0), 1)


def space_max(space: Space) -> Optional[Point]:
    """The maximum of the space; the Sorgenfrey line has none."""
    return Point(ARROW, Fraction(1), 0) if space is ARROW else None


def check_space(*things) -> Space:
    spaces = {t.space for t in things}
    if len(spaces) != 1:
        raise SpaceMismatch("mixed spaces: " + ", ".join(sorted(s.value for s in spaces)))
    return spaces.pop()


def compare(p: Point, q: Point) -> int:
    """-1, 0 or 1 according as p < q, p == q, p > q."""
    check_space(p, q)
    return (p.key > q.key) - (p.key < q.key)


def successor(p: Point) -> Optional[Point]:
    if p.space is ARROW and p.side == 0 and p.coord < 1:
        return Point(ARROW, p.coord, 1)
    return None


def predecessor(p: Point) -> Optional[Point]:
    if p.space is ARROW and p.side == 1 and p.coord > 0:
        return Point(ARROW, p.coord, 0)
    return None


# -- cuts ---------------------------------------------------------------

def lower_cut(p: Point) -> Cut:
    """The gap immediately below p."""
    return (p.coord, p.side, 0)


def upper_cut(p: Point) -> Cut:
    """The gap immediately above p."""
    if p.side == 0:
        return (p.coord, 1, 0)
    return (p.coord, 1, 1)


def in_cuts(p: Point, ranges: Iterable[CutRange]) -> bool:
    k = lower_cut(p)
    return any(a <= k < b for a, b in ranges)


def merge_cuts(ranges: Iterable[CutRange]) -> tuple:
    """Sort and coalesce overlapping or touching ranges; drop empty ones."""
    out: list = []
    for a, b in sorted(r for r in ranges if r[0] < r[1]):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


def intersect_cuts(xs: Sequence[CutRange], ys: Sequence[CutRange]) -> tuple:
    out = []
    for a, b in xs:
        for c, d in ys:
            lo, hi = max(a, c), min(b, d)
            if lo < hi:
                out.append((lo, hi))
    if len(out) < 2:
        return tuple(out)
    return merge_cuts(out)


def subtract_cuts(xs: Sequence[CutRange], ys: Sequence[CutRange]) -> tuple:
    out = []
    ys = merge_cuts(ys)
    for a, b in merge_cuts(xs):
        cur = a
        for c, d in ys:
            if d <= cur or c >= b:
                continue
            if c > cur:
                out.append((cur, c))
            cur = max(cur, d)
        if cur < b:
            out.append((cur, b))
    return merge_cuts(out)


def covers_cuts(outer: Sequence[CutRange], inner: Sequence[CutRange]) -> bool:
    return not subtract_cuts(inner, outer)


# -- closed intervals -----------------------------------------------------

@dataclass(frozen=True)
class ClosedInterval:
    lo: Point
    hi: Point

    def __post_init__(self):
        check_space(self.lo, self.hi)
        if self.hi < self.lo:
            raise OrderViolation(f"interval [{self.lo},{self.hi}] has lo > hi")

    @property
    def space(self) -> Space:
        return self.lo.space

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def cuts(self) -> CutRange:
        return (lower_cut(self.lo), upper_cut(self.hi))

    def __contains__(self, p: Point) -> bool:
        return self.lo <= p <= self.hi

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


def mk_interval(a: Point, b: Point) -> ClosedInterval:
    return ClosedInterval(a, b)


def is_clopen(interval: ClosedInterval) -> bool:
    """Whether a closed interval of the double arrow is also open.

    The endpoint tests ``lo.side == 1`` / ``hi.side == 0`` already cover the
    global minimum <0,1> and maximum <1,0>.
    """
    if interval.space is not ARROW:
        raise SpaceMismatch("is_clopen is defined for double-arrow intervals only")
    return interval.lo.side == 1 and interval.hi.side == 0


# -- open sets ------------------------------------------------------------

@dataclass(frozen=True)
class OpenPiece:
    """A basic open set.

    In the double arrow ``]lo, hi[`` with ``None`` standing for an unbounded
    end (so ``OpenPiece(ARROW, None, b)`` is the ray ``]<-, b[``).  In the
    Sorgenfrey line ``[lo, hi[``, with ``None`` meaning 0 resp. 1.
    """

    space: Space
    lo: Optional[Point] = None
    hi: Optional[Point] = None

    def __post_init__(self):
        for p in (self.lo, self.hi):
            if p is not None and p.space is not self.space:
                raise SpaceMismatch("endpoint space does not match piece space")
        if self.space is SORGENFREY and self.lo is None:
            object.__setattr__(self, "lo", space_min(SORGENFREY))
        a, b = self.cuts()
        if not a < b:
            raise ValueError(f"empty basic open set {format_piece(self)}")

    def cuts(self) -> CutRange:
        if self.space is ARROW:
            a = START if self.lo is None else upper_cut(self.lo)
            b = END if self.hi is None else lower_cut(self.hi)
        else:
            a = START if self.lo is None else lower_cut(self.lo)
            b = END if self.hi is None else lower_cut(self.hi)
        return (a, b)

    @property
    def is_whole(self) -> bool:
        return self.cuts() == (START, END)

    def __contains__(self, p: Point) -> bool:
        return in_cuts(p, [self.cuts()])

    def __str__(self):
        return format_piece(self)


def whole_space(space: Space) -> OpenPiece:
    return OpenPiece(space, None, None)


def piece_from_cuts(space: Space, rng: CutRange) -> OpenPiece:
    """Inverse of :meth:`OpenPiece.cuts` for ranges that are basic open sets."""
    a, b = rng
    if space is ARROW:
        if a == START:
            lo = None
        elif a[1:] == (1, 0):
            lo = Point(ARROW, a[0], 0)
        elif a[1:] == (1, 1):
            lo = Point(ARROW, a[0], 1)
        else:
            raise ValueError(f"cut {a} is not the upper gap of a point")
        if b == END:
            hi = None
        elif b[2] == 0:
            hi = Point(ARROW, b[0], b[1])
        else:
            raise ValueError(f"cut {b} is not the lower gap of a point")
    else:
        if a[2] != 0 or b[2] != 0:
            raise ValueError("Sorgenfrey basic sets have the form [c,d[")
        lo = None if a == START else Point(SORGENFREY, a[0], 1)
        hi = None if b == END else Point(SORGENFREY, b[0], 1)
    return OpenPiece(space, lo, hi)


@dataclass(frozen=True)
class OpenSet:
    """Finite union of basic open sets; the pieces may overlap."""

    space: Space
    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for piece in self.pieces:
            if piece.space is not self.space:
                raise SpaceMismatch("open piece space does not match open set")

    def cuts(self) -> tuple:
        return merge_cuts(p.cuts() for p in self.pieces)

    def __contains__(self, p: Point) -> bool:
        return point_in_open(p, self)

    def __str__(self):
        return " u ".join(str(p) for p in self.pieces) or "{}"


def as_open_set(v) -> OpenSet:
    return OpenSet(v.space, (v,)) if isinstance(v, OpenPiece) else v


def point_in_open(p: Point, v) -> bool:
    v = as_open_set(v)
    check_space(p, v)
    return any(p in piece for piece in v.pieces)


# -- text syntax ------------------------------------------------------------

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL.match(str(text))
    if not m:
        raise ParseError(f"not an exact rational: {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_point(text: str, space: Optional[Space] = None) -> Point:
    """Parse ``"p/q|b"`` (double arrow) or ``"p/q"`` (Sorgenfrey)."""
    text = str(text).strip()
    try:
        if "|" in text:
            coord, side = text.split("|")
            if space is SORGENFREY:
                raise ParseError(f"side bit given for a Sorgenfrey point: {text!r}")
            side = side.strip()
            if side not in ("0", "1"):
                raise ParseError(f"bad side bit in {text!r}")
            return Point(ARROW, parse_rational(coord), int(side))
        if space is ARROW:
            raise ParseError(f"double-arrow point needs a side bit: {text!r}")
        return Point(SORGENFREY, parse_rational(text), 1)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_point(p: Point) -> str:
    if p.space is ARROW:
        return f"{format_rational(p.coord)}|{p.side}"
    return format_rational(p.coord)


def _split_pair(body: str, text: str):
    parts = body.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected two endpoints in {text!r}")
    return parts[0].strip(), parts[1].strip()


def parse_interval(text: str, space: Optional[Space] = None) -> ClosedInterval:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError(f"closed interval must look like [lo,hi]: {text!r}")
    a, b = _split_pair(t[1:-1], text)
    return ClosedInterval(parse_point(a, space), parse_point(b, space))


def parse_piece(text: str, space: Optional[Space] = None) -> OpenPiece:
    """Parse ``(lo,hi)``, ``(-inf,hi)``, ``(lo,+inf)`` or Sorgenfrey ``[c,d)``."""
    t = text.strip()
    if t.startswith("[") and t.endswith(")"):
        if space is ARROW:
            raise ParseError(f"[c,d) is Sorgenfrey syntax: {text!r}")
        a, b = _split_pair(t[1:-1], text)
        lo = None if a in ("-inf",) else parse_point(a, SORGENFREY)
        hi = None if b in ("+inf", "inf") else parse_point(b, SORGENFREY)
        return OpenPiece(SORGENFREY, lo, hi)
    if t.startswith("(") and t.endswith(")"):
        a, b = _split_pair(t[1:-1], text)
        lo = None if a == "-inf" else parse_point(a, space)
        hi = None if b in ("+inf", "inf") else parse_point(b, space)
        sp = space or next((p.space for p in (lo, hi) if p is not None), ARROW)
        if sp is SORGENFREY:
            raise ParseError(f"Sorgenfrey basic sets are written [c,d): {text!r}")
        return OpenPiece(ARROW, lo, hi)
    raise ParseError(f"not an open piece: {text!r}")


def format_piece(piece: OpenPiece) -> str:
    lo = "-inf" if piece.lo is None else format_point(piece.lo)
    hi = "+inf" if piece.hi is None else format_point(piece.hi)
    if piece.space is SORGENFREY:
        return f"[{lo},{hi})"
    return f"({lo},{hi})"
