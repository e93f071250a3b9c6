import random
from fractions import Fraction

import numpy as np
import pytest

import gridcheck
from arrowhyp.errors import NotInLower, NotInUpper
from arrowhyp.hyperspace import DeltaTuple, canonicalize, varrho
from arrowhyp.order import ARROW, SORGENFREY, ClosedInterval, OpenPiece, OpenSet, whole_space
from arrowhyp.sampling import random_delta, random_open_set, random_representative, random_union
from arrowhyp.vietoris import (
    BoxSpec,
    Form,
    Kind,
    SaturatedBoxSpec,
    SubbasicSet,
    box_for_lower,
    box_for_upper,
    mem_lower,
    mem_upper,
    sample_box,
    saturation_check,
)

from conftest import A, S, probe_points


def U(*pairs):
    return canonicalize(ClosedInterval(a, b) for a, b in pairs)


def arrow_piece(a, b):
    return OpenPiece(ARROW, None if a is None else A(a), None if b is None else A(b))


def union_anchors(F, V):
    pts = list(F.endpoints)
    for piece in V.pieces:
        pts += [p for p in (piece.lo, piece.hi) if p is not None]
    return pts


class TestMembership:
    def test_lower_examples(self):
        F = U((A("1/4|1"), A("1/2|0")))
        assert mem_lower(F, arrow_piece("1/8|1", "3/4|0"))
        whole = U((A("0|1"), A("1|0")))
        assert not mem_lower(whole, arrow_piece("1/8|1", "3/4|0"))
        joint = OpenSet(ARROW, (arrow_piece("1/8|1", "3/8|0"), arrow_piece("1/3|0", "3/4|0")))
        assert mem_lower(F, joint)
        assert not any(mem_lower(F, p) for p in joint.pieces)

    def test_upper_examples(self):
        F = U((A("1/4|1"), A("1/2|0")))
        assert mem_upper(F, arrow_piece("3/8|1", "5/8|0"))
        assert not mem_upper(F, arrow_piece("1/2|0", "3/4|0"))
        G = U((S("1/2"), S("3/4")))
        assert mem_upper(G, OpenPiece(SORGENFREY, S("3/4"), S("7/8")))

    def test_adjacency_gap(self):
        # ]<-, <1/2,0>[ u ]<1/2,0>, ->[ misses exactly <1/2,0>
        V = OpenSet(ARROW, (arrow_piece(None, "1/2|0"), arrow_piece("1/2|0", None)))
        assert not mem_lower(U((A("1/4|1"), A("3/4|0"))), V)
        assert mem_lower(U((A("1/4|1"), A("1/3|0")), (A("1/2|1"), A("3/4|0"))), V)

    def test_subbasic_wrapper(self):
        F = U((A("1/4|1"), A("1/2|0")))
        V = OpenSet(ARROW, (arrow_piece("3/8|1", "5/8|0"),))
        assert F in SubbasicSet(Kind.UPPER, V)
        assert F not in SubbasicSet(Kind.LOWER, V)

    def test_probe_oracle(self, rng):
        for space in (ARROW, SORGENFREY):
            for _ in range(400):
                F = random_union(rng, space, rng.randint(1, 3))
                V = random_open_set(rng, space, rng.randint(1, 3))
                probes = probe_points(space, union_anchors(F, V), rng, extra=10)
                inside = [p for p in probes if p in F]
                assert mem_lower(F, V) == all(p in V for p in inside)
                assert mem_upper(F, V) == any(p in V for p in inside)

    def test_monotone(self, rng):
        for space in (ARROW, SORGENFREY):
            for _ in range(300):
                F = random_union(rng, space, 2)
                V = random_open_set(rng, space, 2)
                bigger = OpenSet(space, V.pieces + random_open_set(rng, space, 1).pieces)
                assert mem_lower(F, bigger) or not mem_lower(F, V)
                assert mem_upper(F, bigger) or not mem_upper(F, V)


class TestBoxes:
    def test_lower_single_piece(self):
        x = DeltaTuple(ARROW, (A("1/4|1"), A("1/2|0")))
        W = arrow_piece("1/8|1", "3/4|0")
        box = box_for_lower(x, W)
        assert box.factors == (W, W)
        assert x in box

    def test_lower_merged_hull(self):
        x = DeltaTuple(ARROW, (A("1/4|1"), A("1/2|0")))
        V = OpenSet(ARROW, (arrow_piece("1/8|1", "3/8|0"), arrow_piece("1/3|0", "3/4|0")))
        box = box_for_lower(x, V)
        assert box.factors == (arrow_piece("1/8|1", "3/4|0"),) * 2
        rng = random.Random(3)
        for _ in range(1000):
            y = sample_box(rng, box)
            assert y in box and mem_lower(varrho(y), V)

    def test_lower_precondition(self):
        x = DeltaTuple(ARROW, (A("1/4|1"), A("7/8|0")))
        with pytest.raises(NotInLower):
            box_for_lower(x, arrow_piece("1/8|1", "3/4|0"))

    def test_upper_case1(self):
        x = DeltaTuple(ARROW, (A("1/4|1"), A("1/2|0")))
        W = arrow_piece("3/8|1", "5/8|0")
        assert box_for_upper(x, W).factors == (whole_space(ARROW), W)

    def test_upper_case2(self):
        x = DeltaTuple(ARROW, (A("1/4|1"), A("3/4|0")))
        W = arrow_piece("3/8|1", "5/8|0")
        box = box_for_upper(x, W)
        assert box.factors == (arrow_piece(None, "5/8|0"), arrow_piece("3/8|1", None))
        assert str(box) == "(-inf,5/8|0) x (3/8|1,+inf)"

    def test_upper_rays(self):
        x = DeltaTuple(ARROW, (A("1/8|1"), A("1/4|0"), A("1/2|1"), A("3/4|0")))
        below = arrow_piece(None, "1/3|0")
        above = arrow_piece("2/3|0", None)
        X = whole_space(ARROW)
        assert box_for_upper(x, below).factors == (below, X, X, X)
        assert box_for_upper(x, above).factors == (X, X, X, above)

    def test_upper_sorgenfrey(self):
        W = OpenPiece(SORGENFREY, S("1/2"), S("3/4"))
        x = DeltaTuple(SORGENFREY, (S("1/4"), S("7/8")))
        box = box_for_upper(x, W)
        assert box.factors == (OpenPiece(SORGENFREY, None, S("3/4")), OpenPiece(SORGENFREY, S("3/4"), None))
        y = DeltaTuple(SORGENFREY, (S("1/4"), S("5/8")))
        assert box_for_upper(y, W).factors == (whole_space(SORGENFREY), W)

    def test_upper_precondition(self):
        x = DeltaTuple(ARROW, (A("1/4|1"), A("1/3|0")))
        with pytest.raises(NotInUpper):
            box_for_upper(x, arrow_piece("1/2|1", "5/8|0"))

    @pytest.mark.parametrize("case", gridcheck.CASES)
    def test_grid_sampling(self, case):
        outside, violations = gridcheck.run_case(case, instances=60, samples=300, seed=11)
        assert outside == 0
        assert violations == 0

    def test_grid_oracle_detects_bad_boxes(self):
        # whole-space boxes must be caught as violating for most instances
        rng = random.Random(5)
        nrng = np.random.default_rng(5)
        whole = lambda x, V: BoxSpec(x.space, [whole_space(x.space)] * len(x))
        caught = sum(gridcheck.check_instance(rng, nrng, "upper-arrow-case1", 200, make_box=whole)[1] > 0
                     for _ in range(20))
        assert caught >= 10

    def test_library_sampler(self, rng):
        for space in (ARROW, SORGENFREY):
            for _ in range(100):
                V = random_open_set(rng, space, 2)
                x = random_delta(rng, space, 2)
                if mem_lower(varrho(x), V):
                    box = box_for_lower(x, V)
                    for _ in range(20):
                        y = sample_box(rng, box)
                        assert y is not None and y in box and mem_lower(varrho(y), V)


class TestSaturation:
    @pytest.mark.parametrize("form", [Form.UNION, Form.INTERSECTION])
    @pytest.mark.parametrize("r", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
    def test_quoted_forms(self, form, r):
        for m in (1, 2, 3):
            rep = saturation_check(SaturatedBoxSpec(form, r, m), trials=600, seed=m)
            assert rep.violations == 0 and rep.saturated

    def test_control_has_witness(self):
        rep = saturation_check(SaturatedBoxSpec(Form.PROJECTION, Fraction(1, 2), 2, coord=1), 2000, seed=1)
        assert rep.violations >= 1
        x, y = rep.witnesses[0]
        assert varrho(x) == varrho(y)
        spec = rep.spec
        assert (x in spec) != (y in spec)

    def test_first_coordinate_projection_is_saturated(self):
        # x(0) is always the least point of varrho(x)
        rep = saturation_check(SaturatedBoxSpec(Form.PROJECTION, Fraction(1, 2), 2, coord=0), 2000, seed=1)
        assert rep.violations == 0

    def test_explicit_witness(self):
        spec = SaturatedBoxSpec(Form.PROJECTION, Fraction(1, 2), 2, coord=1)
        a, b = A("1/4|1"), A("3/4|0")
        assert DeltaTuple(ARROW, (a, a, a, b)) in spec
        assert DeltaTuple(ARROW, (a, b, b, b)) not in spec

    def test_seed_determinism(self):
        spec = SaturatedBoxSpec(Form.PROJECTION, Fraction(1, 4), 3, coord=2)
        assert saturation_check(spec, 300, 9).witnesses == saturation_check(spec, 300, 9).witnesses

    def test_representatives_are_equivalent(self, rng):
        for _ in range(300):
            m = rng.randint(1, 3)
            u = random_union(rng, ARROW, m)
            assert varrho(random_representative(rng, u, m)) == u

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            SaturatedBoxSpec(Form.UNION, Fraction(1), 1)
        with pytest.raises(ValueError):
            SaturatedBoxSpec(Form.UNION, Fraction(1, 2), 0)
        with pytest.raises(ValueError):
            saturation_check(SaturatedBoxSpec(Form.UNION, Fraction(1, 2), 1), 0, 1)
