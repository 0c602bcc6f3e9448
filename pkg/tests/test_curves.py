import random
from fractions import Fraction as F

import pytest

from ddlab.curves import (
    CIRCLE_DENOMINATOR,
    CurveFamily,
    build_F,
    common_component_check,
    curve_points,
    f_pq_eval,
    incidence_count,
    ordered_pairs,
)
from ddlab.energy import quadruple_count_offdiag
from ddlab.exact import Point2, phi
from ddlab.harness import circle_points, gen_circle, gen_generic_plane, random_rational
from ddlab.polynomials import BivarPoly
from ddlab.suites import component_suite, random_pq

p0 = Point2(F(2), F(0))
q0 = Point2(F(7, 5), F(1, 5))
P0 = [p0, q0]


def test_f_pq_examples():
    u = Point2(F(1), F(0))
    assert f_pq_eval(p0, p0, u, u) == 0
    assert f_pq_eval(p0, q0, Point2(F(3, 5), F(4, 5)), Point2(F(0), F(1))) == 0
    assert f_pq_eval(p0, q0, u, u) == F(4, 5)


def test_build_F_examples():
    Fpq = build_F(p0, q0)
    assert Fpq(F(1, 2), F(1)) == 0  # phi(1/2) = (3/5, 4/5), phi(1) = (0, 1)
    # (1 + 0)^2 (1 + 0)^2 * 4/5
    assert Fpq(F(0), F(0)) == F(4, 5)
    assert Fpq.total_degree <= 12


def test_build_F_rejects_double_origin():
    o = Point2(F(0), F(0))
    with pytest.raises(ValueError):
        build_F(o, o)


def test_degree_and_evaluation_identity():
    rng = random.Random(2024)
    for i in range(1000):
        p, q = random_pq(rng)
        Fpq = build_F(p, q)
        assert Fpq.total_degree <= 12
        if i < 100:
            x, y = random_rational(rng, 16), random_rational(rng, 16)
            scale = (1 + x * x) ** 2 * (1 + y * y) ** 2
            assert Fpq(x, y) == scale * f_pq_eval(p, q, phi(x), phi(y))


def test_circle_denominators_divide_F():
    rng = random.Random(5)
    for _ in range(20):
        Fpq = build_F(*random_pq(rng))
        assert Fpq.divisible_by_x(CIRCLE_DENOMINATOR)
        assert Fpq.divisible_by_y(CIRCLE_DENOMINATOR)


def test_incidence_examples():
    assert incidence_count([0, 1, F(1, 2)], ordered_pairs(P0)) == 4
    assert incidence_count([0, 1], ordered_pairs(P0)) == 0
    assert incidence_count([0, 1, F(1, 2)], []) == 0
    found = {(x, y, p) for x, y, p, _ in curve_points([0, 1, F(1, 2)], P0)}
    assert found == {(0, F(1, 2), p0), (F(1, 2), 1, p0), (F(1, 2), 0, q0), (1, F(1, 2), q0)}


def test_incidence_rejects_bad_input():
    with pytest.raises(ValueError):
        incidence_count([0, 1], [(p0, p0)])
    with pytest.raises(ValueError):
        incidence_count([0, 0], ordered_pairs(P0))


@pytest.mark.parametrize("seed", range(30))
def test_incidences_equal_offdiag_quadruples(seed):
    rng = random.Random(seed)
    params = gen_circle(rng.randint(1, 12), seed)
    P = gen_generic_plane(rng.randint(1, 12), seed + 500)
    S = circle_points(params)
    assert incidence_count(params, ordered_pairs(P)) == quadruple_count_offdiag(S, P)


def test_incidence_identity_with_forced_collisions():
    # P invariant under quarter turns and S under reflections: many cross-collisions
    params = [0, 1, -1, F(1, 2), F(-1, 2), F(2), F(-2)]
    P = [Point2(F(2), F(0)), Point2(F(0), F(2)), Point2(F(-2), F(0)), Point2(F(0), F(-2))]
    S = circle_points(params)
    n = quadruple_count_offdiag(S, P)
    assert n > 0
    assert incidence_count(params, ordered_pairs(P)) == n


def test_common_component_examples():
    Fpq = build_F(p0, q0)
    assert common_component_check(Fpq, Fpq)
    scaled = build_F(Point2(F(4), F(0)), Point2(F(14, 5), F(2, 5)))
    assert not common_component_check(Fpq, scaled)
    X = BivarPoly.x()
    assert common_component_check(Fpq, (1 + X * X) * Fpq)


def test_common_component_plain_gcd_keeps_circle_factors():
    # the shared 1+x^2, 1+y^2 factors have no real points but are common factors over Q
    scaled = build_F(Point2(F(4), F(0)), Point2(F(14, 5), F(2, 5)))
    assert common_component_check(build_F(p0, q0), scaled, real_only=False)


def test_no_common_components_random():
    records = component_suite(60, seed=11)
    assert records and not any(r.shared for r in records)


def test_curve_family():
    fam = CurveFamily.from_points(P0 + [Point2(F(3), F(1))])
    assert len(fam) == 6
    assert max(fam.degrees()) <= 12
