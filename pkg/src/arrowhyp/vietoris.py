"""Vietoris subbasic sets and neighbourhood boxes around tuples.

``[V]`` is the set of closed F with F inside V, ``<V>`` the set of closed F
meeting V.  For a tuple x whose image under :func:`varrho` lies in one of
these, :func:`box_for_lower` / :func:`box_for_upper` return a product of
basic open sets B with x in B and every non-decreasing y in B mapping into
the same subbasic set.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import NotInLower, NotInUpper, SpaceMismatch
from .hyperspace import ClosedUnion, DeltaTuple, canonicalize, varrho
from .order import (
    ARROW,
    END,
    ClosedInterval,
    START,
    OpenPiece,
    OpenSet,
    Point,
    Space,
    as_open_set,
    check_space,
    covers_cuts,
    in_cuts,
    intersect_cuts,
    lower_cut,
    merge_cuts,
    piece_from_cuts,
    space_max,
    space_min,
    upper_cut,
    whole_space,
)
from .sampling import MAX_DEN, random_coord, random_representative, random_union


class Kind(str, enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class SubbasicSet:
    kind: Kind
    open_set: OpenSet

    def __contains__(self, F: ClosedUnion) -> bool:
        if self.kind is Kind.LOWER:
            return mem_lower(F, self.open_set)
        return mem_upper(F, self.open_set)


def mem_lower(F: ClosedUnion, V) -> bool:
    """F in [V]: every point of F lies in V."""
    V = as_open_set(V)
    check_space(F, V)
    return covers_cuts(V.cuts(), F.cuts())


def mem_upper(F: ClosedUnion, V) -> bool:
    """F in <V>: F meets V."""
    V = as_open_set(V)
    check_space(F, V)
    return bool(intersect_cuts(F.cuts(), V.cuts()))


@dataclass(frozen=True)
class BoxSpec:
    """Product of basic open sets, one per tuple coordinate."""

    space: Space
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.space is not self.space:
                raise SpaceMismatch("box factor space does not match box")

    def __len__(self):
        return len(self.factors)

    def __contains__(self, y: DeltaTuple) -> bool:
        return len(y) == len(self.factors) and all(p in f for p, f in zip(y, self.factors))

    def __str__(self):
        return " x ".join("X" if f.is_whole else str(f) for f in self.factors)


def box_for_lower(x: DeltaTuple, V) -> BoxSpec:
    """Box around x inside the preimage of [V].

    Coordinates 2i and 2i+1 both get W_i, the union of the pieces of V that
    meet [x(2i), x(2i+1)].  W_i is a single open interval because those pieces
    cover that interval and each of them meets it.
    """
    V = as_open_set(V)
    check_space(x, V)
    if not mem_lower(varrho(x), V):
        raise NotInLower(f"varrho{x} is not contained in {V}")
    factors = []
    for i in range(len(x) // 2):
        comp = (lower_cut(x[2 * i]), upper_cut(x[2 * i + 1]))
        hits = [p.cuts() for p in V.pieces if intersect_cuts([p.cuts()], [comp])]
        (w,) = merge_cuts(hits)
        wi = piece_from_cuts(x.space, w)
        factors += [wi, wi]
    return BoxSpec(x.space, factors)


def _ray_below(space: Space, b: Point) -> OpenPiece:
    return OpenPiece(space, None, b)


def box_for_upper(x: DeltaTuple, W: OpenPiece) -> BoxSpec:
    """Box around x inside the preimage of <W>, for a single basic open W.

    Follows the case split on the first pair [x(2j), x(2j+1)] meeting W:

    * double arrow, W = ]<-, a[: factor 2j is W;
    * W = ]a, ->[: factor 2j+1 is W;
    * W = ]a, b[ with x(2j+1) in W (or Sorgenfrey W = [c, d[ with
      x(2j+1) < d): factor 2j+1 is W;
    * otherwise x(2j+1) is past W while x(2j) is below its right end:
      factor 2j is the ray below that end and factor 2j+1 the ray from
      W's left end (]a, ->[ resp. [d, ->[ in the Sorgenfrey line).
    """
    if isinstance(W, OpenSet):
        if len(W.pieces) != 1:
            raise ValueError("box_for_upper needs a single basic open set")
        (W,) = W.pieces
    space = check_space(x, W)
    j = next(
        (i for i in range(len(x) // 2)
         if intersect_cuts([W.cuts()], [(lower_cut(x[2 * i]), upper_cut(x[2 * i + 1]))])),
        None,
    )
    if j is None:
        raise NotInUpper(f"varrho{x} does not meet {W}")
    factors = [whole_space(space)] * len(x)
    hi = x[2 * j + 1]
    if space is ARROW:
        if W.lo is None and W.hi is not None:
            factors[2 * j] = W
        elif W.hi is None:
            factors[2 * j + 1] = W
        elif hi in W:
            factors[2 * j + 1] = W
        else:
            # hi >= b, hence lo < b
            factors[2 * j] = _ray_below(space, W.hi)
            factors[2 * j + 1] = OpenPiece(space, W.lo, None)
    else:
        if hi in W:
            factors[2 * j + 1] = W
        else:
            # hi >= d, hence lo < d
            factors[2 * j] = _ray_below(space, W.hi)
            factors[2 * j + 1] = OpenPiece(space, W.hi, None)
    return BoxSpec(space, factors)


# -- sampling inside boxes --------------------------------------------------

def _point_in_range(rng: random.Random, space: Space, lo_cut, hi_cut, max_den: int) -> Optional[Point]:
    """A random point p with lo_cut <= p- < hi_cut, or None if none was found."""
    if not lo_cut < hi_cut:
        return None
    cands = []
    if lo_cut[2] == 0 and lo_cut != END:
        try:
            cands.append(Point(space, lo_cut[0], lo_cut[1]))
        except ValueError:
            pass
    if hi_cut[2] == 1:
        cands.append(Point(space, hi_cut[0], 1))
    elif space is ARROW and hi_cut[1:] == (1, 0) and hi_cut[0] > 0:
        cands.append(Point(space, hi_cut[0], 0))
    cands = [c for c in cands if in_cuts(c, [(lo_cut, hi_cut)])]
    if cands and rng.random() < 0.25:
        return rng.choice(cands)
    for _ in range(16):
        c = random_coord(rng, lo_cut[0], hi_cut[0], max_den)
        side = rng.randint(0, 1) if space is ARROW else 1
        try:
            p = Point(space, c, side)
        except ValueError:
            continue
        if in_cuts(p, [(lo_cut, hi_cut)]):
            return p
    return rng.choice(cands) if cands else None


def sample_box(rng: random.Random, box: BoxSpec, max_den: int = MAX_DEN, tries: int = 64) -> Optional[DeltaTuple]:
    """A random non-decreasing tuple inside ``box``; None if sampling failed."""
    for _ in range(tries):
        pts = []
        floor = START
        for f in box.factors:
            a, b = f.cuts()
            p = _point_in_range(rng, box.space, max(a, floor), b, max_den)
            if p is None:
                break
            pts.append(p)
            floor = lower_cut(p)
        else:
            return DeltaTuple(box.space, pts)
    return None


# -- saturation ---------------------------------------------------------------

class Form(str, enum.Enum):
    UNION = "union"
    INTERSECTION = "intersection"
    PROJECTION = "projection"


@dataclass(frozen=True)
class SaturatedBoxSpec:
    """A clopen subset of the 2m-th power of the double arrow.

    * ``UNION``: some coordinate lies in [<0,1>, <r,0>];
    * ``INTERSECTION``: every coordinate lies in [<r,1>, <1,0>];
    * ``PROJECTION``: coordinate ``coord`` alone lies in [<0,1>, <r,0>]
      (a control; saturated only for the first and last coordinates).
    """

    form: Form
    r: Fraction
    m: int
    coord: int = 0

    def __post_init__(self):
        object.__setattr__(self, "form", Form(self.form))
        object.__setattr__(self, "r", Fraction(self.r))
        if not 0 < self.r < 1:
            raise ValueError("cut r must lie strictly between 0 and 1")
        if self.m < 1:
            raise ValueError("m must be positive")
        if not 0 <= self.coord < 2 * self.m:
            raise ValueError(f"coordinate {self.coord} out of range for m={self.m}")

    @property
    def low_top(self) -> Point:
        return Point(ARROW, self.r, 0)

    @property
    def high_bottom(self) -> Point:
        return Point(ARROW, self.r, 1)

    def __contains__(self, x: DeltaTuple) -> bool:
        if x.space is not ARROW or len(x) != 2 * self.m:
            raise ValueError("expected a double-arrow tuple of length 2m")
        if self.form is Form.UNION:
            return any(p <= self.low_top for p in x)
        if self.form is Form.INTERSECTION:
            return all(p >= self.high_bottom for p in x)
        return x[self.coord] <= self.low_top


@dataclass
class SaturationReport:
    spec: SaturatedBoxSpec
    trials: int
    violations: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def saturated(self) -> bool:
        return self.violations == 0


def _adversarial_points(r: Fraction) -> list:
    lo, hi = r / 2, (1 + r) / 2
    return [
        space_min(ARROW), Point(ARROW, lo, 0), Point(ARROW, lo, 1),
        Point(ARROW, r, 0), Point(ARROW, r, 1),
        Point(ARROW, hi, 0), Point(ARROW, hi, 1), space_max(ARROW),
    ]


def _adversarial_union(rng: random.Random, r: Fraction, m: int) -> ClosedUnion:
    pool = _adversarial_points(r)
    pts = sorted((rng.choice(pool) for _ in range(2 * rng.randint(1, m))), key=lambda p: p.key)
    return canonicalize(ClosedInterval(pts[2 * i], pts[2 * i + 1]) for i in range(len(pts) // 2))


def saturation_check(spec: SaturatedBoxSpec, trials: int, seed: int, max_witnesses: int = 5) -> SaturationReport:
    """Look for pairs x, y with varrho(x) == varrho(y) but different membership.

    Half the trials draw unions at random; the other half build them from
    points at and around the cut (<r,0>, <r,1>, ...) and prefer those points
    as split points, so that representatives straddle the adjacency at r.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = SaturationReport(spec, trials)
    hints = _adversarial_points(spec.r)
    for t in range(trials):
        if t % 2:
            u = _adversarial_union(rng, spec.r, spec.m)
        else:
            u = random_union(rng, ARROW, spec.m)
        x = random_representative(rng, u, spec.m, hints=hints)
        y = random_representative(rng, u, spec.m, hints=hints)
        if (x in spec) != (y in spec):
            report.violations += 1
            if len(report.witnesses) < max_witnesses:
                report.witnesses.append((x, y))
    return report
