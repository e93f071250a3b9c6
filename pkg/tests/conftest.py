"""Shared helpers.  The oracles here only use point comparisons, never the
cut encoding, so they are independent of the code under test."""
import random
from fractions import Fraction

import pytest

from arrowhyp.order import ARROW, SORGENFREY, Point, predecessor, successor


def A(text: str) -> Point:
    """``A("1/2|0")`` is the double-arrow point <1/2,0>."""
    c, s = text.split("|")
    return Point(ARROW, Fraction(c), int(s))


def S(text: str) -> Point:
    return Point(SORGENFREY, Fraction(text), 1)


def probe_points(space, anchors, rng=None, extra=0):
    """Anchors, their neighbours, midpoints of consecutive anchor coordinates
    (both sides) and ``extra`` random points."""
    out = set(anchors)
    for p in anchors:
        for q in (successor(p), predecessor(p)):
            if q is not None:
                out.add(q)
    coords = sorted({Fraction(0), Fraction(1)} | {p.coord for p in anchors})
    mids = [(a + b) / 2 for a, b in zip(coords, coords[1:])]
    for c in coords + mids:
        for side in ((0, 1) if space is ARROW else (1,)):
            try:
                out.add(Point(space, c, side))
            except ValueError:
                pass
    if rng is not None:
        for _ in range(extra):
            den = rng.randint(1, 2 ** 10)
            c = Fraction(rng.randint(0, den), den)
            side = rng.randint(0, 1) if space is ARROW else 1
            try:
                out.add(Point(space, c, side))
            except ValueError:
                pass
    return sorted(out, key=lambda p: p.key)


def in_raw_union(p, intervals):
    """Oracle: p lies in some [lo, hi] of the list."""
    return any(iv.lo <= p <= iv.hi for iv in intervals)


@pytest.fixture
def rng():
    return random.Random(20240601)


# acceptance lines, printed in the terminal summary so they survive capture
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
