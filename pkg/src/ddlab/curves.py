"""Equal-distance curves F_{p,q} in the parameter plane and their incidences.

For u = phi(x), v = phi(y) on the unit circle, ``F_{p,q}(x, y) = 0`` exactly
when |u - p| = |v - q|. ``F_{p,q}`` is built by clearing the denominators
(1+x^2)^2 (1+y^2)^2 from the equal-distance quadric, term by term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .exact import ORIGIN, Point2, phi, sq_dist
from .polynomials import BivarPoly, UPoly, bivar_gcd

X = BivarPoly.x()
Y = BivarPoly.y()
ONE_PLUS_X2 = 1 + X * X
ONE_PLUS_Y2 = 1 + Y * Y
CIRCLE_DENOMINATOR = UPoly((1, 0, 1))


def f_pq_eval(p: Point2, q: Point2, u: Point2, v: Point2) -> Fraction:
    """|p - u|^2 - |q - v|^2."""
    return sq_dist(p, u) - sq_dist(q, v)


def build_F(p: Point2, q: Point2) -> BivarPoly:
    """F_{p,q}(x, y) = (1+x^2)^2 (1+y^2)^2 f_{p,q}(phi(x), phi(y)), expanded exactly."""
    if p == ORIGIN and q == ORIGIN:
        raise ValueError("F_{p,q} vanishes identically for p = q = 0")
    p1, p2 = p
    q1, q2 = q
    # (1+x^2)(p_i - phi_i(x)) for each coordinate, likewise in y
    ux = [p1 * ONE_PLUS_X2 - (1 - X * X), p2 * ONE_PLUS_X2 - 2 * X]
    vy = [q1 * ONE_PLUS_Y2 - (1 - Y * Y), q2 * ONE_PLUS_Y2 - 2 * Y]
    left = ONE_PLUS_Y2 * ONE_PLUS_Y2 * (ux[0] * ux[0] + ux[1] * ux[1])
    right = ONE_PLUS_X2 * ONE_PLUS_X2 * (vy[0] * vy[0] + vy[1] * vy[1])
    return left - right


class _IntegerCurve:
    """F with integer coefficients for fast zero tests at rational points.

    F(a/b, c/d) = 0  iff  sum coef_ij a^i b^(m-i) c^j d^(n-j) = 0 with m, n the
    degrees in x and y.
    """

    def __init__(self, F: BivarPoly):
        den = lcm(*(c.denominator for c in F.coeffs.values())) if F.coeffs else 1
        self.terms = [(i, j, int(c * den)) for (i, j), c in F.coeffs.items()]
        self.m = F.degree_x
        self.n = F.degree_y

    def vanishes(self, xpows, ypows) -> bool:
        # xpows[i] = a^i b^(m-i); ypows[j] = c^j d^(n-j)
        return sum(c * xpows[i] * ypows[j] for i, j, c in self.terms) == 0


def _homogeneous_powers(t: Fraction, deg: int) -> list[int]:
    a, b = t.numerator, t.denominator
    return [a**i * b ** (deg - i) for i in range(deg + 1)]


def incidence_count(s_params: Sequence[Fraction], pairs: Iterable[tuple[Point2, Point2]]) -> int:
    """Count (x, y, (p, q)) with x, y in s_params and F_{p,q}(x, y) = 0.

    Counted over the indexed list of ordered pairs; equal curves are not merged.
    """
    s_params = [Fraction(t) for t in s_params]
    if len(set(s_params)) != len(s_params):
        raise ValueError("circle parameters must be distinct")
    total = 0
    cache: dict[int, tuple[list, list]] = {}
    for p, q in pairs:
        if p == q:
            raise ValueError(f"curve F_(p,q) requires p != q, got p = q = {p}")
        curve = _IntegerCurve(build_F(p, q))
        key = (curve.m, curve.n)
        if key not in cache:
            cache[key] = (
                [_homogeneous_powers(t, curve.m) for t in s_params],
                [_homogeneous_powers(t, curve.n) for t in s_params],
            )
        xp, yp = cache[key]
        for xpows in xp:
            for ypows in yp:
                if curve.vanishes(xpows, ypows):
                    total += 1
    return total


def ordered_pairs(P: Sequence[Point2]) -> list[tuple[Point2, Point2]]:
    return [(p, q) for i, p in enumerate(P) for j, q in enumerate(P) if i != j]


def strip_circle_denominators(F: BivarPoly) -> BivarPoly:
    """Divide out every factor 1+x^2 and 1+y^2 (curves with no real points)."""
    while F.degree_x >= 2 and F.divisible_by_x(CIRCLE_DENOMINATOR):
        F = F.exact_div_x(CIRCLE_DENOMINATOR)
    while F.degree_y >= 2 and F.divisible_by_y(CIRCLE_DENOMINATOR):
        F = F.exact_div_y(CIRCLE_DENOMINATOR)
    return F


def common_factor(F1: BivarPoly, F2: BivarPoly) -> BivarPoly:
    if F1.is_zero() or F2.is_zero():
        raise ValueError("zero polynomial has no well-defined common component")
    return bivar_gcd(F1, F2)


def common_component_check(F1: BivarPoly, F2: BivarPoly, real_only: bool = True) -> bool:
    """Whether F1 and F2 share a nonconstant common factor over Q.

    Every F_{p,q} carries the factors 1+x^2 and 1+y^2 left over from clearing
    denominators; their zero sets have no real points. With ``real_only`` those
    factors are removed from the gcd before its degree is inspected, so the
    answer concerns the real curves Z(F). ``real_only=False`` gives the plain
    polynomial verdict.
    """
    g = common_factor(F1, F2)
    if real_only:
        g = strip_circle_denominators(g)
    return g.total_degree > 0


@dataclass
class CurveFamily:
    """The indexed family of curves F_{p,q} over ordered pairs p != q of P."""

    entries: list[tuple[Point2, Point2, BivarPoly]] = field(default_factory=list)

    @classmethod
    def from_points(cls, P: Sequence[Point2]) -> "CurveFamily":
        return cls([(p, q, build_F(p, q)) for p, q in ordered_pairs(P)])

    def __len__(self) -> int:
        return len(self.entries)

    def degrees(self) -> list[int]:
        return [F.total_degree for _, _, F in self.entries]


def curve_points(s_params, P) -> list[tuple[Fraction, Fraction, Point2, Point2]]:
    """All incidences (x, y, p, q), for callers that need the actual points."""
    out = []
    for p, q in ordered_pairs(P):
        for x in s_params:
            for y in s_params:
                if f_pq_eval(p, q, phi(x), phi(y)) == 0:
                    out.append((Fraction(x), Fraction(y), p, q))
    return out
