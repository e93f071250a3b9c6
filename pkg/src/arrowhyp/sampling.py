"""Seedable random generators for points, unions, tuples and open sets.

Every function takes an explicit :class:`random.Random`; nothing here touches
global state.  Denominators are bounded by ``max_den`` (default 2**10) and
skewed toward small values so that coincidences such as ``<a,0>`` next to
``<a,1>`` actually occur.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .hyperspace import ClosedUnion, DeltaTuple, canonicalize
from .order import (
    ARROW,
    SORGENFREY,
    ClosedInterval,
    OpenPiece,
    OpenSet,
    Point,
    Space,
    successor,
)

MAX_DEN = 2 ** 10


def _den(rng: random.Random, max_den: int) -> int:
    cap = rng.choice((4, 16, max_den))
    return rng.randint(1, min(cap, max_den))


def random_coord(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = MAX_DEN) -> Fraction:
    """A rational in [lo, hi], occasionally an endpoint."""
    r = rng.random()
    if r < 0.1:
        return lo
    if r < 0.2:
        return hi
    den = _den(rng, max_den)
    return lo + (hi - lo) * Fraction(rng.randint(0, den), den)


def random_point(rng: random.Random, space: Space, max_den: int = MAX_DEN) -> Point:
    den = _den(rng, max_den)
    if space is ARROW:
        c = Fraction(rng.randint(0, den), den)
        side = 1 if c == 0 else 0 if c == 1 else rng.randint(0, 1)
        return Point(ARROW, c, side)
    return Point(space, Fraction(rng.randint(0, den - 1), den), 1)


def random_between(rng: random.Random, a: Point, b: Point, max_den: int = MAX_DEN) -> Point:
    """A point p with a <= p <= b."""
    for _ in range(8):
        c = random_coord(rng, a.coord, b.coord, max_den)
        side = rng.randint(0, 1) if a.space is ARROW else 1
        try:
            p = Point(a.space, c, side)
        except ValueError:
            continue
        if a <= p <= b:
            return p
    return rng.choice((a, b))


def random_intervals(rng: random.Random, space: Space, count: int, max_den: int = MAX_DEN) -> list:
    out = []
    for _ in range(count):
        a, b = sorted((random_point(rng, space, max_den), random_point(rng, space, max_den)), key=lambda p: p.key)
        out.append(ClosedInterval(a, b))
    return out


def random_union(rng: random.Random, space: Space, m: int, max_den: int = MAX_DEN) -> ClosedUnion:
    """A canonical union with at most m components."""
    pts = sorted((random_point(rng, space, max_den) for _ in range(2 * rng.randint(1, m))), key=lambda p: p.key)
    return canonicalize(ClosedInterval(pts[2 * i], pts[2 * i + 1]) for i in range(len(pts) // 2))


def random_delta(rng: random.Random, space: Space, length: int, max_den: int = MAX_DEN) -> DeltaTuple:
    pts = sorted((random_point(rng, space, max_den) for _ in range(length)), key=lambda p: p.key)
    return DeltaTuple(space, pts)


def _cover(rng: random.Random, iv: ClosedInterval, slots: int, max_den: int, hints=()) -> list:
    """``slots`` consecutive sub-intervals whose union is exactly ``iv``.

    Consecutive pieces either share a point or, in the double arrow, meet at
    an adjacent pair ``<a,0>``, ``<a,1>``.
    """
    pts = [iv.lo]
    cur = iv.lo
    for _ in range(slots - 1):
        usable = [h for h in hints if cur <= h <= iv.hi]
        if usable and rng.random() < 0.5:
            p = rng.choice(usable)
        else:
            p = random_between(rng, cur, iv.hi, max_den)
        nxt = successor(p)
        if nxt is not None and nxt <= iv.hi and rng.random() < 0.5:
            pts += [p, nxt]
            cur = nxt
        else:
            pts += [p, p]
            cur = p
    pts.append(iv.hi)
    return pts


def random_representative(rng: random.Random, u: ClosedUnion, m: int, max_den: int = MAX_DEN, hints=()) -> DeltaTuple:
    """A random tuple x of length 2m with varrho(x) == u.

    ``hints`` are points preferred as split points, e.g. both halves of an
    adjacent pair that a test wants to straddle.
    """
    k = len(u)
    if k > m:
        raise ValueError(f"{k} components do not fit in m={m}")
    slots = [1] * k
    for _ in range(m - k):
        slots[rng.randrange(k)] += 1
    pts = []
    for iv, s in zip(u.components, slots):
        pts += _cover(rng, iv, s, max_den, hints)
    return DeltaTuple(u.space, pts)


def random_open_piece(rng: random.Random, space: Space, max_den: int = MAX_DEN) -> OpenPiece:
    while True:
        a, b = sorted((random_point(rng, space, max_den), random_point(rng, space, max_den)), key=lambda p: p.key)
        r = rng.random()
        lo = None if r < 0.15 else a
        hi = None if 0.15 <= r < 0.3 else b
        try:
            return OpenPiece(space, lo, hi)
        except ValueError:
            continue


def random_open_set(rng: random.Random, space: Space, pieces: int, max_den: int = MAX_DEN) -> OpenSet:
    return OpenSet(space, [random_open_piece(rng, space, max_den) for _ in range(pieces)])


_RATIOS = tuple(Fraction(p, q) for p, q in ((1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (5, 7)))


def random_seq(rng: random.Random, space: Space, exceptional: int = 3, max_den: int = 64):
    """A random geometric sequence.

    Double-arrow limits are interior or at the minimum, approached from
    above or below; up to ``exceptional`` extra terms are scattered on
    either side of the limit.
    """
    from .sequences import ConvergentSeq

    ratio = rng.choice(_RATIOS)
    while True:
        den = rng.randint(1, max_den)
        base = Fraction(rng.randint(0, den - 1), den) if rng.random() < 0.8 else Fraction(0)
        down = space is ARROW and base > 0 and rng.random() < 0.5
        room = base if down else 1 - base
        scale = room * Fraction(rng.randint(1, 8), 8) / ratio
        if space is SORGENFREY and base + scale * ratio >= 1:
            continue
        scale = -scale if down else scale
        side = 1 if space is SORGENFREY else rng.randint(0, 1)
        limit = Point(space, base, 0 if down else 1)
        try:
            seq = ConvergentSeq(space, limit, (), base, scale, ratio, side)
        except ValueError:
            continue
        extra = []
        for _ in range(rng.randint(0, exceptional)):
            p = random_point(rng, space, max_den)
            if p not in seq and p not in extra:
                extra.append(p)
        return ConvergentSeq(space, limit, tuple(extra), base, scale, ratio, side)
