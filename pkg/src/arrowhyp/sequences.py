"""Nontrivial convergent sequences and homeomorphisms between them.

A sequence is a limit point, finitely many exceptional terms, and a
geometric tail ``base + scale * ratio**n`` (n >= 1).  In the double arrow a
point ``<a,1>`` is only approached from above and ``<a,0>`` only from
below, so the sign of ``scale`` determines the side of the limit; at most
finitely many terms (the exceptional ones) can sit on the other side.

:func:`build_to_canonical` carries any such sequence onto the canonical one,
``{<0,1>} u {<1/2^n,1>}`` in the double arrow and ``{0} u {1/2^n}`` in the
Sorgenfrey line, in two stages: move the limit to the minimum, then map the
m-th block between consecutive cuts onto ``[<1/2^m,1>, <1/2^(m-1),0>]`` with
the m-th largest term landing on its minimum.
"""
from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .errors import ModulusError, SpaceMismatch, Unsupported
from .homeo import (
    WHOLE,
    PiecewiseHomeo,
    Tail,
    affine_cell_map,
    cell,
    compose,
    point_to_min,
    simplify,
)
from .order import ARROW, SORGENFREY, Point, Space, space_min

HALF = Fraction(1, 2)
CUT_RULE = "t_m = coord(z[m+1]) if z[m+1] has side 0, else (coord z[m+1] + coord z[m]) / 2"


@dataclass(frozen=True)
class ConvergentSeq:
    space: Space
    limit: Point
    exceptional: tuple
    base: Fraction
    scale: Fraction
    ratio: Fraction
    side: int = 1

    def __post_init__(self):
        for name in ("base", "scale", "ratio"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        object.__setattr__(self, "exceptional", tuple(self.exceptional))
        if not 0 < self.ratio < 1:
            raise ModulusError(f"ratio {self.ratio} does not give a convergent tail")
        if self.scale == 0:
            raise ModulusError("scale 0 gives a constant tail")
        if self.space is SORGENFREY:
            if self.side != 1:
                raise ValueError("Sorgenfrey terms carry no side bit")
            if self.scale < 0:
                raise ModulusError("Sorgenfrey sequences converge from above only")
        for p in (self.limit,) + self.exceptional:
            if p.space is not self.space:
                raise SpaceMismatch("sequence points live in another space")
        expected = self.generator_limit()
        if self.limit != expected:
            raise ModulusError(f"tail converges to {expected}, not to the declared limit {self.limit}")
        try:
            self.term(1)
        except ValueError as exc:
            raise ModulusError(f"first tail term leaves the space: {exc}") from exc
        seen = set()
        for p in self.exceptional:
            if p == self.limit or p in seen or self.tail_index(p) is not None:
                raise ValueError(f"exceptional term {p} repeats another point of the sequence")
            seen.add(p)

    def generator_limit(self) -> Point:
        if self.space is SORGENFREY:
            return Point(SORGENFREY, self.base, 1)
        return Point(ARROW, self.base, 1 if self.scale > 0 else 0)

    def term(self, n: int) -> Point:
        if n < 1:
            raise IndexError("tail terms are numbered from 1")
        return Point(self.space, self.base + self.scale * self.ratio ** n, self.side)

    def tail_index(self, p: Point) -> Optional[int]:
        """n with term(n) == p, or None."""
        if p.space is not self.space or p.side != self.side:
            return None
        d = (p.coord - self.base) / self.scale
        if d <= 0:
            return None
        n, rn = 1, self.ratio
        while rn > d:
            n, rn = n + 1, rn * self.ratio
        return n if rn == d else None

    def is_term(self, p: Point) -> bool:
        return p in self.exceptional or self.tail_index(p) is not None

    def __contains__(self, p: Point) -> bool:
        return p == self.limit or self.is_term(p)

    def terms(self) -> Iterator[Point]:
        """Exceptional terms first, then the tail."""
        yield from self.exceptional
        n = 1
        while True:
            yield self.term(n)
            n += 1

    def first_terms(self, count: int) -> list:
        it = self.terms()
        return [next(it) for _ in range(count)]

    def modulus(self, eps) -> int:
        """Least N with term(n) inside the eps-neighbourhood of the limit for n >= N.

        The neighbourhood is [limit, <a+eps,0>] (resp. [<a-eps,1>, limit], or
        [a, a+eps[ in the Sorgenfrey line).
        """
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        size = abs(self.scale)
        # a term exactly on the cut coordinate is inside only on the near side
        edge_inside = self.space is ARROW and self.side == (0 if self.scale > 0 else 1)
        n, dist = 1, size * self.ratio
        while dist > eps or (dist == eps and not edge_inside):
            n, dist = n + 1, dist * self.ratio
        return n

    @property
    def is_canonical(self) -> bool:
        return self == canonical_seq(self.space)


def canonical_seq(space: Space) -> ConvergentSeq:
    return ConvergentSeq(space, space_min(space), (), 0, 1, HALF, 1)


def successive_maxima(seq, start: int = 1) -> Iterator[Point]:
    """Terms of a sequence converging to the space minimum, largest first.

    ``seq`` needs ``exceptional`` and ``term(n)``; tail terms from index
    ``start`` on must strictly decrease.  Everything before ``start`` is
    pooled with the exceptional terms.
    """
    pool = [(_neg(p), i, p) for i, p in enumerate(list(seq.exceptional) + [seq.term(n) for n in range(1, start)])]
    heapq.heapify(pool)
    n, prev = start, None
    nxt = seq.term(n)
    while True:
        if prev is not None and not nxt < prev:
            raise Unsupported("tail is not strictly decreasing")
        if pool and pool[0][2] > nxt:
            yield heapq.heappop(pool)[2]
        else:
            yield nxt
            prev, n = nxt, n + 1
            nxt = seq.term(n)


def _neg(p: Point):
    return (-p.coord, -p.side)


class _MappedSeq:
    """Image of a sequence under a finite-piece homeomorphism."""

    def __init__(self, h: PiecewiseHomeo, seq: ConvergentSeq):
        self.h, self.seq = h, seq
        self.exceptional = tuple(h(p) for p in seq.exceptional)

    def term(self, n: int) -> Point:
        return self.h(self.seq.term(n))


class _Maxima:
    """Thread-safe memo over :func:`successive_maxima`; index 1 is z_1."""

    def __init__(self, it: Iterator[Point]):
        self._it = it
        self._seen: list = []
        self._lock = threading.Lock()

    def __getitem__(self, m: int) -> Point:
        with self._lock:
            while len(self._seen) < m:
                self._seen.append(next(self._it))
            return self._seen[m - 1]


def _cut(space: Space, z_prev: Point, z_next: Point) -> Fraction:
    """Cut coordinate t with z_next inside [min, t] and z_prev outside it."""
    if space is ARROW and z_next.side == 0:
        return z_next.coord
    return (z_next.coord + z_prev.coord) / 2


def _monotone_start(f: PiecewiseHomeo, seq: ConvergentSeq) -> int:
    piece = f.locate(seq.limit)
    n = 1
    while not piece.contains(seq.term(n)):
        n += 1
    return n


def canonical_tail_homeo(space: Space, z: _Maxima, info: Optional[dict] = None) -> PiecewiseHomeo:
    """Homeomorphism fixing the minimum and sending z[m] to the m-th canonical term.

    ``z`` must enumerate, in decreasing order, the terms of a sequence that
    converges to the minimum of the space.
    """
    cuts: dict = {0: Fraction(1)}
    lock = threading.Lock()

    def t(m: int) -> Fraction:
        with lock:
            if m not in cuts:
                cuts[m] = _cut(space, z[m], z[m + 1])
            return cuts[m]

    def block(m: int):
        src = cell(t(m), t(m - 1))
        dst = cell(HALF ** m, HALF ** (m - 1))
        to_front = point_to_min(src, z[m])
        onto = affine_cell_map(src, dst)
        out = []
        for p in to_front.pieces_over((src,)):
            out += p.then(onto)
        return simplify(out)

    lo = space_min(space)
    tail = Tail(lo, lo, lambda m: (cell(0, t(m)),), lambda m: (cell(0, HALF ** m),), block,
                dict(info or {}, kind="canonical", cut_rule=CUT_RULE))
    return PiecewiseHomeo(space, (), (tail,))


def build_to_canonical(seq: ConvergentSeq) -> PiecewiseHomeo:
    """A homeomorphism h with h(limit) = min and h(terms) = canonical terms."""
    f = point_to_min(WHOLE, seq.limit)
    mapped = _MappedSeq(f, seq)
    z = _Maxima(successive_maxima(mapped, _monotone_start(f, seq)))
    g = canonical_tail_homeo(seq.space, z)
    h = compose(f, g)
    object.__setattr__(h, "origin", ("canonical", seq))
    return h


def build_seq_homeo(S: ConvergentSeq, T: ConvergentSeq) -> PiecewiseHomeo:
    """A homeomorphism carrying S (limit and terms) onto T."""
    if S.space is not T.space:
        raise SpaceMismatch("sequences live in different spaces")
    h = compose(build_to_canonical(S), build_to_canonical(T).inverse())
    object.__setattr__(h, "origin", ("seq", S, T))
    return h


@dataclass
class SeqMapReport:
    checked: int
    mapped: int = 0
    limit_ok: bool = False
    misses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.limit_ok and self.mapped == self.checked and not self.misses


def verify_seq_map(h: PiecewiseHomeo, S: ConvergentSeq, T: ConvergentSeq, count: int) -> SeqMapReport:
    """Check h(limit S) == limit T and that the first ``count`` terms of S
    land injectively on terms of T."""
    if count < 1:
        raise ValueError("count must be at least 1")
    report = SeqMapReport(count, limit_ok=h(S.limit) == T.limit)
    seen = set()
    for p in S.first_terms(count):
        q = h(p)
        if T.is_term(q) and q not in seen:
            report.mapped += 1
            seen.add(q)
        else:
            report.misses.append((p, q))
    return report
