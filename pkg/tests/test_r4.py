import math
import random
from fractions import Fraction as F

import pytest

from ddlab.exact import Point2, sq_dist
from ddlab.polynomials import count_real_roots, squarefree_part
from ddlab.r4 import (
    Hyperplane4,
    ProbeError,
    TwoFlat,
    curve_pair_intersection,
    hyperplane_of,
    intersect_with_2flat,
    isolated_point_probe,
    on_curve,
    plane_resultant,
    probe_safe_radius,
)
from ddlab.suites import (
    curve_pair_through_points,
    curve_through_points,
    flat_suite,
    pair_suite,
    random_flat,
    random_hyperplane,
    random_pq,
    scalar_multiple_suite,
    summarize,
)

from oracles import line_intersection_count, numeric_distinct_real_roots, plane_intersection_count

p0 = Point2(F(2), F(0))
q0 = Point2(F(7, 5), F(1, 5))


def _planes(*hs):
    return [(h.normal, h.offset) for h in hs]


def test_hyperplane_examples():
    h = hyperplane_of(p0, q0)
    assert h.normal == (2, 0, F(-7, 5), F(-1, 5))
    assert h.offset == 1
    assert h.contains((F(3, 5), F(4, 5), 0, 1))
    assert hyperplane_of(p0, p0).offset == 0
    h2 = hyperplane_of(Point2(F(4), F(0)), Point2(F(14, 5), F(2, 5)))
    assert h2.offset == 4 * h.offset
    assert h2.normal == tuple(2 * c for c in h.normal)


def test_hyperplane_contains_curve_points():
    rng = random.Random(3)
    for _ in range(20):
        p, q, _, pts = curve_through_points(rng)
        for z in pts:
            assert on_curve(p, q, z)
            assert hyperplane_of(p, q).contains(z)


def test_invalid_flats():
    with pytest.raises(ValueError):
        Hyperplane4((0, 0, 0, 0), 1)
    h = Hyperplane4((1, 0, 0, 0), 0)
    with pytest.raises(ValueError):
        TwoFlat(h, Hyperplane4((2, 0, 0, 0), 1))


def test_hand_derived_flat():
    K = TwoFlat(Hyperplane4((0, 1, 0, 0), F(4, 5)), hyperplane_of(p0, q0))
    result = intersect_with_2flat(p0, q0, K)
    assert result.count == 2
    points = {w.point for w in result.witnesses}
    assert all(w.exact for w in result.witnesses)
    assert points == {(F(3, 5), F(4, 5), 0, 1), (F(3, 5), F(4, 5), F(7, 25), F(-24, 25))}
    for z in points:
        assert sq_dist(z[:2], p0) == sq_dist(z[2:], q0) == F(13, 5)


def test_flat_with_no_points():
    K = TwoFlat(Hyperplane4((0, 1, 0, 0), 0), Hyperplane4((0, 0, 0, 1), 1))
    assert intersect_with_2flat(p0, q0, K).count == 0


def test_degenerate_when_curve_lies_in_flat():
    # p = q: the curve contains the diagonal circle u = v
    K = TwoFlat(Hyperplane4((1, 0, -1, 0), 0), Hyperplane4((0, 1, 0, -1), 0))
    result = intersect_with_2flat(p0, p0, K)
    assert result.degenerate
    assert str(result) == "DEGENERATE"


def test_pair_examples():
    scaled = curve_pair_intersection(p0, q0, Point2(F(4), F(0)), Point2(F(14, 5), F(2, 5)))
    assert scaled.count == 0
    swapped = curve_pair_intersection(p0, q0, q0, p0)
    assert not swapped.degenerate and swapped.count <= 4
    hs = _planes(hyperplane_of(p0, q0), hyperplane_of(q0, p0))
    assert swapped.count == plane_intersection_count(hs)
    with pytest.raises(ValueError):
        curve_pair_intersection(p0, q0, p0, q0)


def test_flat_suite_bound():
    summary = summarize("flat", flat_suite(120, seed=1))
    assert summary.ok, summary.failures
    assert summary.max_count <= 4


def test_three_point_flats_hit_all_points():
    for r in flat_suite(40, seed=9):
        if r.kind == "three-points":
            assert r.result.count >= 3


def test_pair_suite_bound():
    summary = summarize("pair", pair_suite(80, seed=2))
    assert summary.ok, summary.failures


def test_scalar_multiples_are_disjoint():
    assert all(r.result.count == 0 for r in scalar_multiple_suite(50, seed=4))


def test_plane_case_matches_numeric_oracle():
    rng = random.Random(17)
    compared = 0
    for i in range(120):
        if i % 2:
            (p, q), (p2, q2) = random_pq(rng), random_pq(rng)
        else:
            (p, q), (p2, q2), _ = curve_pair_through_points(rng)
        expected = plane_intersection_count(_planes(hyperplane_of(p, q), hyperplane_of(p2, q2)))
        if expected is None:
            continue
        assert curve_pair_intersection(p, q, p2, q2).count == expected, (p, q, p2, q2)
        compared += 1
    assert compared >= 100


def _hyperplane_through(rng, a, b):
    """Random hyperplane containing the points a and b."""
    d = [y - x for x, y in zip(a, b)]
    if not any(d):
        d = [1, 0, 0, 0]  # only a is required
    while True:
        r = random_hyperplane(rng).normal
        k = sum(x * y for x, y in zip(r, d)) / sum(x * x for x in d)
        n = tuple(x - k * y for x, y in zip(r, d))
        if any(n):
            return Hyperplane4(n, sum(x * y for x, y in zip(n, a)))


def test_line_case_matches_exact_oracle():
    rng = random.Random(23)
    seen = set()
    for i in range(90):
        if i % 3 == 0:
            p, q = random_pq(rng)
            K = random_flat(rng)
        else:
            # lines through one or two known curve points inside the curve's hyperplane
            p, q, K3, pts = curve_through_points(rng)
            h = _hyperplane_through(rng, pts[0], pts[1] if i % 3 == 2 else pts[0])
            try:
                K = TwoFlat(K3.h1, h)
            except ValueError:
                continue
        expected = line_intersection_count(_planes(K.h1, K.h2, hyperplane_of(p, q)))
        if expected is None:
            continue
        assert intersect_with_2flat(p, q, K).count == expected
        seen.add(expected)
    assert seen == {0, 1, 2}


@pytest.mark.slow
def test_sturm_counts_on_resultants():
    rng = random.Random(31)
    checked = 0
    while checked < 1000:
        (p, q), (p2, q2) = random_pq(rng, 16), random_pq(rng, 16)
        res = plane_resultant(p, q, TwoFlat(hyperplane_of(p, q), hyperplane_of(p2, q2)))
        if res is None or res.degree < 1:
            continue
        sf = squarefree_part(res)
        assert count_real_roots(sf) == numeric_distinct_real_roots(sf.c)
        checked += 1


# --- local continuation ---

z0 = (F(3, 5), F(4, 5), F(0), F(1))


def test_probe_example():
    t = F(1, 100)
    w = isolated_point_probe(p0, q0, z0, t)
    d_u = math.sqrt(float(sq_dist(z0[:2], p0)))
    d_v = math.sqrt(float(sq_dist(z0[2:], q0)))
    assert abs(math.dist(w[:2], (2, 0)) - (d_u + 0.01)) < 1e-12
    assert abs(math.dist(w[2:], (1.4, 0.2)) - (d_v + 0.01)) < 1e-12
    assert abs(w[0] ** 2 + w[1] ** 2 - 1) < 1e-12
    assert abs(w[2] ** 2 + w[3] ** 2 - 1) < 1e-12
    # nearby, but a different point
    gap = math.dist(w, [float(c) for c in z0])
    assert 0 < gap < 0.1


def test_probe_keeps_side():
    w = isolated_point_probe(p0, q0, z0, F(1, 100))
    assert w[1] > 0  # u above the line through p = (2, 0)
    # v = (0, 1) lies left of the direction (7/5, 1/5)
    assert 1.4 * w[3] - 0.2 * w[2] > 0


def test_probe_zero_and_errors():
    assert isolated_point_probe(p0, q0, z0, 0) == tuple(float(c) for c in z0)
    with pytest.raises(ProbeError):
        isolated_point_probe(p0, q0, (1, 0, 1, 0), F(1, 100))
    with pytest.raises(ProbeError):
        isolated_point_probe(p0, q0, z0, 10)


def test_probe_converges():
    prev = None
    for k in (10, 100, 1000, 10000):
        w = isolated_point_probe(p0, q0, z0, F(1, k))
        gap = math.dist(w, [float(c) for c in z0])
        if prev is not None:
            assert gap < prev
        prev = gap
    assert prev < 1e-3


def test_no_isolated_points_on_random_curves():
    rng = random.Random(8)
    probed = 0
    for _ in range(40):
        p, q, _, pts = curve_through_points(rng)
        for z in pts:
            t = F(1, 100)
            radius = probe_safe_radius(p, q, z)
            if radius <= 0:
                continue
            if radius <= 0.01:
                t = F(radius / 2).limit_denominator(10**6)
            try:
                w = isolated_point_probe(p, q, z, t)
            except ProbeError as exc:
                if "requires" in str(exc):
                    continue
                raise
            fz = [float(c) for c in z]
            assert 0 < math.dist(w, fz)
            d_u = math.sqrt(float(sq_dist(z[:2], p)))
            d_v = math.sqrt(float(sq_dist(z[2:], q)))
            assert abs(math.dist(w[:2], [float(c) for c in p]) - d_u - float(t)) < 1e-12
            assert abs(math.dist(w[2:], [float(c) for c in q]) - d_v - float(t)) < 1e-12
            probed += 1
    assert probed >= 60
