"""Randomized verification suites shared by the CLI and the acceptance tests.

Each suite is seeded and returns plain records so callers decide how to
report them. Instances with rational points on C_{p,q} are built by choosing
three rational pairs (u_i, v_i) on the torus first and solving the linear
conditions -2 u_i.p + 2 v_i.q + c = 0 for (p, q, c), then fixing the scale so
that c = |p|^2 - |q|^2.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .curves import build_F, common_component_check, incidence_count, ordered_pairs
from .energy import (
    brute_force_quadruples,
    diagonal_quadruples,
    distance_histogram,
    quadruple_count,
    quadruple_count_offdiag,
)
from .exact import ORIGIN, Point2, phi, sq_norm
from .harness import circle_points, gen_circle, gen_generic_plane, random_rational
from .r4 import (
    FlatIntersection,
    Hyperplane4,
    TwoFlat,
    _nullspace,
    _rank,
    curve_pair_intersection,
    hyperplane_of,
    intersect_with_2flat,
    witness_residuals,
)

# --- instance builders -------------------------------------------------------


def random_point(rng: random.Random, bound: int = 64) -> Point2:
    return Point2(random_rational(rng, bound), random_rational(rng, bound))


def random_pq(rng: random.Random, bound: int = 64) -> tuple[Point2, Point2]:
    """Random (p, q) with p, q != 0 and |p|^2 != |q|^2."""
    while True:
        p, q = random_point(rng, bound), random_point(rng, bound)
        if p != ORIGIN and q != ORIGIN and sq_norm(p) != sq_norm(q):
            return p, q


def random_hyperplane(rng: random.Random, bound: int = 8) -> Hyperplane4:
    while True:
        normal = tuple(random_rational(rng, bound) for _ in range(4))
        if any(normal):
            return Hyperplane4(normal, random_rational(rng, bound))


def random_flat(rng: random.Random, bound: int = 8) -> TwoFlat:
    while True:
        h1, h2 = random_hyperplane(rng, bound), random_hyperplane(rng, bound)
        if _rank([h1.normal, h2.normal]) == 2:
            return TwoFlat(h1, h2)


def random_flat_through(rng: random.Random, z, bound: int = 8) -> TwoFlat:
    K = random_flat(rng, bound)
    return TwoFlat(*(Hyperplane4(h.normal, sum(n * c for n, c in zip(h.normal, z))) for h in (K.h1, K.h2)))


def torus_point(rng: random.Random, bound: int = 16) -> tuple:
    u, v = phi(random_rational(rng, bound)), phi(random_rational(rng, bound))
    return (u[0], u[1], v[0], v[1])


@dataclass
class SharedPoints:
    """Three rational torus points and a 2-dim space of (p, q, c) through them."""

    points: list[tuple]
    basis: list[tuple]

    def curve(self, lam: Fraction) -> tuple[Point2, Point2] | None:
        """The (p, q) on the line lam*w1 + w2 scaled so that c = |p|^2 - |q|^2."""
        w1, w2 = self.basis
        z = [lam * a + b for a, b in zip(w1, w2)]
        quad = z[0] ** 2 + z[1] ** 2 - z[2] ** 2 - z[3] ** 2
        if quad == 0 or z[4] == 0:
            return None
        beta = z[4] / quad
        p, q = Point2(beta * z[0], beta * z[1]), Point2(beta * z[2], beta * z[3])
        if p == ORIGIN or q == ORIGIN:
            return None
        return p, q


def shared_points(rng: random.Random, bound: int = 16) -> SharedPoints:
    while True:
        pts = [torus_point(rng, bound) for _ in range(3)]
        if len(set(pts)) < 3:
            continue
        rows = [(-2 * z[0], -2 * z[1], 2 * z[2], 2 * z[3], Fraction(1)) for z in pts]
        basis = _nullspace(rows, 5)
        d1 = [b - a for a, b in zip(pts[0], pts[1])]
        d2 = [b - a for a, b in zip(pts[0], pts[2])]
        if len(basis) == 2 and _rank([d1, d2]) == 2:
            return SharedPoints(pts, basis)


def curve_through_points(rng: random.Random, bound: int = 16):
    """(p, q, flat, points): three rational points of C_{p,q} and the 2-flat through them."""
    while True:
        sp = shared_points(rng, bound)
        pq = sp.curve(random_rational(rng, bound))
        if pq is not None:
            return pq[0], pq[1], TwoFlat.through_points(*sp.points), sp.points


def curve_pair_through_points(rng: random.Random, bound: int = 16):
    """Two distinct curves sharing three rational points."""
    while True:
        sp = shared_points(rng, bound)
        a = sp.curve(random_rational(rng, bound))
        b = sp.curve(random_rational(rng, bound))
        if a is not None and b is not None and a != b:
            return a, b, sp.points


# --- suites ------------------------------------------------------------------


@dataclass
class IdentityRecord:
    s: int
    p: int
    q: int
    q_brute: int | None
    q_tilde: int
    incidences: int
    diagonal: int
    delta: int

    @property
    def ok(self) -> bool:
        n = self.s * self.p
        return (
            self.incidences == self.q_tilde
            and (self.q_brute is None or self.q_brute == self.q)
            and self.q == self.q_tilde + self.diagonal
            and self.delta * self.q >= n * n
            and self.diagonal <= 2 * n
        )


def incidence_identity_suite(
    instances: int, seed: int, max_s: int = 12, max_p: int = 12, oracle: bool = True
) -> list[IdentityRecord]:
    rng = random.Random(seed)
    out = []
    for _ in range(instances):
        ns, np_ = rng.randint(1, max_s), rng.randint(1, max_p)
        params = gen_circle(ns, rng.randrange(2**32))
        S = circle_points(params)
        P = gen_generic_plane(np_, rng.randrange(2**32))
        out.append(identity_record(params, S, P, oracle))
    return out


def identity_record(params, S, P, oracle: bool = True) -> IdentityRecord:
    hist = distance_histogram(S, P)
    return IdentityRecord(
        s=len(S),
        p=len(P),
        q=quadruple_count(S, P),
        q_brute=brute_force_quadruples(S, P) if oracle else None,
        q_tilde=quadruple_count_offdiag(S, P),
        incidences=incidence_count(params, ordered_pairs(P)),
        diagonal=diagonal_quadruples(S, P),
        delta=len(hist),
    )


@dataclass
class IntersectionRecord:
    kind: str
    p: Point2
    q: Point2
    result: FlatIntersection
    known_points: int = 0  # rational points known in advance to lie in the intersection
    residual_ok: bool = True


FLAT_KINDS = ("random", "through-hyperplane", "three-points", "one-point")


def _residuals_ok(p, q, result: FlatIntersection, tol: float = 1e-12) -> bool:
    # the hyperplane residual is divided by |normal|, i.e. read as a distance;
    # raw residuals of large-coefficient hyperplanes are dominated by float rounding
    normal = math.sqrt(sum(float(c) ** 2 for c in hyperplane_of(p, q).normal))
    for w in result.witnesses:
        res = witness_residuals(p, q, w)
        if w.exact and any(res):
            return False
        if not w.exact and (abs(res[0]) / normal > tol or any(abs(r) > tol for r in res[1:])):
            return False
    return True


def flat_suite(trials: int, seed: int) -> list[IntersectionRecord]:
    """Random (p, q) with |p| != |q| against random 2-flats of several kinds."""
    rng = random.Random(seed)
    out = []
    for i in range(trials):
        kind = FLAT_KINDS[i % len(FLAT_KINDS)]
        known = 0
        if kind == "random":
            p, q = random_pq(rng)
            K = random_flat(rng)
        elif kind == "through-hyperplane":
            p, q = random_pq(rng)
            h, h2 = hyperplane_of(p, q), random_hyperplane(rng)
            while _rank([h.normal, h2.normal]) < 2:
                h2 = random_hyperplane(rng)
            K = TwoFlat(h, h2)
        elif kind == "three-points":
            p, q, K, _ = curve_through_points(rng)
            known = 3
        else:
            p, q, _, pts = curve_through_points(rng)
            K = random_flat_through(rng, pts[0])
            known = 1
        result = intersect_with_2flat(p, q, K)
        out.append(IntersectionRecord(kind, p, q, result, known, _residuals_ok(p, q, result)))
    return out


PAIR_KINDS = ("random", "shared-points")


def pair_suite(trials: int, seed: int) -> list[IntersectionRecord]:
    """Random distinct curve pairs, half of them forced through three common points."""
    rng = random.Random(seed)
    out = []
    for i in range(trials):
        kind = PAIR_KINDS[i % len(PAIR_KINDS)]
        if kind == "random":
            (p, q), (p2, q2) = random_pq(rng), random_pq(rng)
            known = 0
        else:
            (p, q), (p2, q2), _ = curve_pair_through_points(rng)
            known = 3
        result = curve_pair_intersection(p, q, p2, q2)
        out.append(IntersectionRecord(kind, p, q, result, known, _residuals_ok(p, q, result)))
    return out


def scalar_multiple_suite(trials: int, seed: int) -> list[IntersectionRecord]:
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        p, q = random_pq(rng)
        t = Fraction(0)
        while t in (0, 1):
            t = random_rational(rng, 16)
        p2, q2 = Point2(t * p[0], t * p[1]), Point2(t * q[0], t * q[1])
        out.append(IntersectionRecord("scalar", p, q, curve_pair_intersection(p, q, p2, q2)))
    return out


@dataclass
class ComponentRecord:
    p: Point2
    q: Point2
    p2: Point2
    q2: Point2
    shared: bool


def component_suite(trials: int, seed: int) -> list[ComponentRecord]:
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        (p, q), (p2, q2) = random_pq(rng), random_pq(rng)
        if (p, q) == (p2, q2):
            continue
        shared = common_component_check(build_F(p, q), build_F(p2, q2))
        out.append(ComponentRecord(p, q, p2, q2, shared))
    return out


@dataclass
class SuiteSummary:
    name: str
    trials: int
    max_count: int = 0
    degenerate: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.degenerate == 0


def summarize(name: str, records: list[IntersectionRecord], limit: int = 4) -> SuiteSummary:
    summary = SuiteSummary(name, len(records))
    for r in records:
        if r.result.degenerate:
            summary.degenerate += 1
            continue
        summary.max_count = max(summary.max_count, r.result.count)
        if r.result.count > limit or r.result.count < r.known_points or not r.residual_ok:
            summary.failures.append(r)
    return summary
