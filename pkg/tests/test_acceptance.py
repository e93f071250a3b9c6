"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line (shown in the terminal summary
and printed with ``-s``) before asserting, so a failing criterion still
reports its numbers.
"""
import random
import time
from fractions import Fraction

import numpy as np

import gridcheck
import homeogen
from arrowhyp.errors import NotRepresentable
from arrowhyp.homeo import Tail, compose, image_closed_union
from arrowhyp.hyperspace import bridge, canonical_rep, canonicalize, equiv_approx, finite_set, varrho
from arrowhyp.order import ARROW, SORGENFREY, compare, predecessor, successor
from arrowhyp.sampling import random_delta, random_intervals, random_point, random_representative, random_seq, random_union
from arrowhyp.sequences import build_seq_homeo, build_to_canonical, verify_seq_map
from arrowhyp.vietoris import Form, SaturatedBoxSpec, saturation_check

from conftest import ACCEPTANCE

SPACES = (ARROW, SORGENFREY)


def report(n, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {n}. {name}: {detail}"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


# -- 1. canonical form against a vectorised pointwise oracle --------------------

def _arrays(points):
    n = np.array([p.coord.numerator for p in points], dtype=np.int64)
    d = np.array([p.coord.denominator for p in points], dtype=np.int64)
    s = np.array([p.side for p in points], dtype=np.int64)
    return n, d, s


def _cmp(probes, pts):
    """Sign matrix of compare(probe, pt) by cross multiplication."""
    pn, pd, ps = probes
    qn, qd, qs = pts
    c = np.sign(pn[:, None] * qd[None, :] - qn[None, :] * pd[:, None])
    return np.where(c == 0, np.sign(ps[:, None] - qs[None, :]), c)


def _inside(probes, intervals):
    return _inside_many(probes, intervals)[0]


def _inside_many(probes, *families):
    """Membership of every probe in each interval list, from one comparison matrix."""
    ends = [p for ivs in families for iv in ivs for p in (iv.lo, iv.hi)]
    c = _cmp(probes, _arrays(ends))
    hit = (c[:, 0::2] >= 0) & (c[:, 1::2] <= 0)
    out, i = [], 0
    for ivs in families:
        out.append(hit[:, i:i + len(ivs)].any(axis=1))
        i += len(ivs)
    return out


def _random_probes(nrng, space, k):
    den = nrng.integers(1, 2 ** 10 + 1, k)
    if space is ARROW:
        num = nrng.integers(0, den + 1)
        side = np.where(num == 0, 1, np.where(num == den, 0, nrng.integers(0, 2, k)))
    else:
        num = nrng.integers(0, den)
        side = np.ones(k, dtype=np.int64)
    return num, den, side


def _structural_probes(space, raw):
    """Endpoints with both sides and midpoints of adjacent coordinates."""
    coords = sorted({Fraction(0), Fraction(1)} | {p.coord for iv in raw for p in (iv.lo, iv.hi)})
    cand = coords + [(a + b) / 2 for a, b in zip(coords, coords[1:])]
    sides = (0, 1) if space is ARROW else (1,)
    pts = [(c, s) for c in cand for s in sides
           if not (space is ARROW and ((c == 0 and s == 0) or (c == 1 and s == 1))) and not (space is SORGENFREY and c == 1)]
    return (np.array([c.numerator for c, _ in pts], dtype=np.int64),
            np.array([c.denominator for c, _ in pts], dtype=np.int64),
            np.array([s for _, s in pts], dtype=np.int64))


def _separated(u):
    """Components sorted with a point strictly between neighbours."""
    for a, b in zip(u.components, u.components[1:]):
        gap = compare(a.hi, b.lo)
        if gap >= 0:
            return False
        if a.hi.space is ARROW and a.hi.coord == b.lo.coord and (a.hi.side, b.lo.side) == (0, 1):
            return False
    return True


def test_1_canonical_form():
    rng = random.Random(1)
    nrng = np.random.default_rng(1)
    cases = [(sp, random_intervals(rng, sp, rng.randint(1, 4))) for sp in SPACES for _ in range(10_000)]
    probes = [_random_probes(nrng, sp, 1000) for sp, _ in cases]
    mismatches = 0
    canon_time = 0.0
    t0 = time.perf_counter()
    for (space, raw), rand in zip(cases, probes):
        t1 = time.perf_counter()
        u = canonicalize(raw)
        canon_time += time.perf_counter() - t1
        pr = tuple(np.concatenate(pair) for pair in zip(_structural_probes(space, raw), rand))
        a, b = _inside_many(pr, raw, u.components)
        mismatches += int((a != b).sum())
        mismatches += not _separated(u)
    per_space = (time.perf_counter() - t0) / len(SPACES)
    report(1, "canonical form", mismatches == 0 and per_space < 5,
           f"{len(cases)} lists ({len(cases) // 2} per space), {mismatches} mismatches, "
           f"{per_space:.2f}s per 10^4 lists incl. oracle (limit 5s), canonicalize alone {canon_time / len(SPACES):.2f}s")


# -- 2. quotient round trips ---------------------------------------------------

def test_2_quotient_round_trip():
    rng = random.Random(2)
    fails = 0
    for i in range(10_000):
        space = SPACES[i % 2]
        m = rng.randint(1, 4)
        u = random_union(rng, space, m)
        fails += varrho(canonical_rep(u, m)) != u
        x = random_delta(rng, space, 2 * m)
        fails += not equiv_approx(x, canonical_rep(varrho(x), m))
    report(2, "quotient round trip", fails == 0, f"2 x 10^4 round trips, {fails} failures")


# -- 3. two-point sets and one-interval unions ------------------------------------

def test_3_bridge():
    rng = random.Random(3)
    fails = 0
    for i in range(10_000):
        space = SPACES[i % 2]
        s = finite_set(random_point(rng, space) for _ in range(rng.randint(1, 2)))
        fails += bridge(bridge(s)) != s
        u = canonicalize(random_intervals(rng, space, 1))
        fails += bridge(bridge(u)) != u
    report(3, "bridge", fails == 0, f"2 x 10^4 round trips, {fails} failures")


def test_1_oracle_sees_dropped_component():
    rng = random.Random(11)
    caught = 0
    for _ in range(200):
        raw = random_intervals(rng, ARROW, 3)
        u = canonicalize(raw)
        if len(u) < 2:
            continue
        probes = _structural_probes(ARROW, raw)
        caught += bool((_inside(probes, raw) != _inside(probes, u.components[1:])).any())
    assert caught > 50


# -- 4. Vietoris boxes -------------------------------------------------------------

def test_4_vietoris_boxes():
    t0 = time.perf_counter()
    lines, total = [], 0
    for case in gridcheck.CASES:
        outside, violations = gridcheck.run_case(case, 1000, 1000, seed=4)
        total += outside + violations
        lines.append(f"{case} {outside}/{violations}")
    elapsed = time.perf_counter() - t0
    report(4, "vietoris boxes", total == 0 and elapsed < 30,
           f"8 cases x 10^3 instances x 10^3 samples, x-outside/violations: {', '.join(lines)}; {elapsed:.1f}s (limit 30s)")


# -- 5. saturation ----------------------------------------------------------------

def test_5_saturation():
    bad = []
    runs = 0
    for form in (Form.UNION, Form.INTERSECTION):
        for r in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            for m in (1, 2, 3):
                rep = saturation_check(SaturatedBoxSpec(form, r, m), 10_000, seed=5)
                runs += 1
                if rep.violations:
                    bad.append(f"{form.value} r={r} m={m}: {rep.violations}")
    control = saturation_check(SaturatedBoxSpec(Form.PROJECTION, Fraction(1, 2), 2, coord=1), 10_000, seed=5)
    x, y = control.witnesses[0] if control.witnesses else (None, None)
    witness_ok = x is not None and varrho(x) == varrho(y)
    report(5, "saturation", not bad and witness_ok,
           f"{runs} boxes x 10^4 trials, violations: {bad or 0}; "
           f"control box (coordinate 1 below 1/2|0, m=2) {control.violations} violations, witness valid: {witness_ok}")


# -- 6. sequence theorem ----------------------------------------------------------

def test_6_sequence_theorem():
    rng = random.Random(6)
    t0 = time.perf_counter()
    fails, kinds = [], {"interior": 0, "at-min": 0, "two-sided": 0}
    for space in SPACES:
        for i in range(100):
            S, T = random_seq(rng, space), random_seq(rng, space)
            kinds["at-min" if S.limit.coord == 0 else "interior"] += 1
            kinds["two-sided"] += any(p < S.limit for p in S.exceptional) and any(p > S.limit for p in S.exceptional)
            rep = verify_seq_map(build_seq_homeo(S, T), S, T, 50)
            if not (rep.mapped == 50 and rep.limit_ok and not rep.misses):
                fails.append((space.value, i))
    elapsed = time.perf_counter() - t0
    report(6, "sequence theorem", not fails and elapsed < 60,
           f"200 pairs (100 per space), N=50, source limits {kinds}, {len(fails)} failures, {elapsed:.1f}s (limit 60s)")


# -- 7. homeomorphism algebra --------------------------------------------------------

def _constructed_maps(rng):
    out = []
    for space in SPACES:
        out.append(build_to_canonical(random_seq(rng, space)))
        out.append(build_to_canonical(random_seq(rng, space)).inverse())
        out.append(build_seq_homeo(random_seq(rng, space), random_seq(rng, space)))
        out.append(homeogen.random_finite(rng, space))
        out.append(homeogen.random_homeo(rng, space))
        out.append(compose(homeogen.random_homeo(rng, space), build_to_canonical(random_seq(rng, space))))
    return out


def _law_failures(h, g, probes):
    inv = h.inverse()
    hg = compose(h, g)
    fails = 0
    images = []
    for p in probes:
        q = h(p)
        images.append(q)
        fails += inv(q) != p or h(inv(p)) != p or hg(p) != g(q)
        where = h.locate(p)
        if not isinstance(where, Tail):
            fails += q.side != (p.side if where.slope > 0 else 1 - p.side)
    # order law within each piece: consecutive probes in one piece keep or flip order
    for (p, q), (hp, hq) in zip(zip(probes, probes[1:]), zip(images, images[1:])):
        a, b = h.locate(p), h.locate(q)
        if a is b and not isinstance(a, Tail):
            fails += compare(hp, hq) != (1 if a.slope > 0 else -1) * compare(p, q)
    return fails


def test_7_homeomorphism_algebra():
    rng = random.Random(7)
    maps = _constructed_maps(rng)
    fails = 0
    for h in maps:
        g = homeogen.random_homeo(rng, h.space)
        probes = sorted((random_point(rng, h.space) for _ in range(10_000)), key=lambda p: p.key)
        probes += [t.limit for t in h.tails]
        fails += _law_failures(h, g, probes)
    report(7, "homeomorphism algebra", fails == 0,
           f"{len(maps)} maps x 10^4 probes (inverse both ways, composition, bit and order laws), {fails} failures")


# -- 8. induced hyperspace map -----------------------------------------------------------

def _image_probes(rng, h, F, img):
    pts = set(img.endpoints) | {t.image_limit for t in h.tails}
    for p in F.endpoints:
        for r in (p, successor(p), predecessor(p)):
            if r is not None:
                pts.add(h(r))
    for p in list(pts):
        for r in (successor(p), predecessor(p)):
            if r is not None:
                pts.add(r)
    pts.update(random_point(rng, h.space) for _ in range(20))
    return pts


def test_8_induced_map():
    rng = random.Random(8)
    maps = [homeogen.random_homeo(rng, ARROW) for _ in range(50)]
    oracle_fails = pair_fails = cases = 0
    for i in range(1000):
        h = maps[i % len(maps)]
        inv = h.inverse()
        F = random_union(rng, ARROW, rng.randint(1, 3))
        img = image_closed_union(h, F)
        cases += 1
        oracle_fails += any((q in img) != (inv(q) in F) for q in _image_probes(rng, h, F, img))
        m = rng.randint(1, 3)
        u = random_union(rng, ARROW, m)
        x, y = random_representative(rng, u, m), random_representative(rng, u, m)
        pair_fails += image_closed_union(h, varrho(x)) != image_closed_union(h, varrho(y))
    s_checked = 0
    for _ in range(200):
        h = homeogen.random_homeo(rng, SORGENFREY)
        F = random_union(rng, SORGENFREY, 2)
        try:
            img = image_closed_union(h, F)
        except NotRepresentable:
            continue
        s_checked += 1
        oracle_fails += any((q in img) != (h.inverse()(q) in F) for q in _image_probes(rng, h, F, img))
    report(8, "induced hyperspace map", oracle_fails == 0 and pair_fails == 0,
           f"{cases} (h, F) in the double arrow + {s_checked} representable Sorgenfrey cases, "
           f"{oracle_fails} oracle failures; 10^3 equivalent pairs, {pair_fails} image mismatches")
