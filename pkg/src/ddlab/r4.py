"""Curves C_{p,q} in R^4 and their intersections with 2-flats.

C_{p,q} is the set of (u, v) with |u| = |v| = 1 and |u - p| = |v - q|. On the
torus the last condition is linear: N_{p,q} . (u, v) = (|p|^2 - |q|^2) / 2 with
N_{p,q} = (p1, p2, -q1, -q2).

Intersection counts are exact. The affine set K ∩ H_{p,q} is parametrized
over Q, the two circle equations are restricted to it, and the real solutions
are counted through a resultant and Sturm sequences. Witness points are exact
when rational and refined approximations otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Sequence

import mpmath

from .exact import ORIGIN, Point2, Point4, cross, dot, norm_gap_is_two, sq_dist, sq_norm
from .polynomials import (
    BivarPoly,
    UPoly,
    bivar_gcd,
    isolate_real_roots,
    resultant_over_qt,
    upoly_gcd,
)

Vec4 = tuple  # four Fractions


@dataclass(frozen=True)
class Hyperplane4:
    """{z in R^4 : normal . z = offset}."""

    normal: Vec4
    offset: Fraction

    def __post_init__(self):
        normal = tuple(Fraction(c) for c in self.normal)
        if len(normal) != 4:
            raise ValueError("hyperplane normal must have four coordinates")
        if not any(normal):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", Fraction(self.offset))

    def contains(self, z: Sequence) -> bool:
        return dot(self.normal, z) == self.offset

    def residual(self, z: Sequence[float]) -> float:
        return sum(float(n) * c for n, c in zip(self.normal, z)) - float(self.offset)


@dataclass(frozen=True)
class TwoFlat:
    """A 2-flat given as the intersection of two hyperplanes with independent normals."""

    h1: Hyperplane4
    h2: Hyperplane4

    def __post_init__(self):
        if _rank([self.h1.normal, self.h2.normal]) != 2:
            raise ValueError("2-flat requires linearly independent normals")

    def parametrize(self) -> tuple[Vec4, list[Vec4]]:
        """Base point and two rational direction vectors."""
        sol = solve_affine([self.h1, self.h2])
        assert sol is not None
        return sol

    @classmethod
    def through_points(cls, a: Sequence, b: Sequence, c: Sequence) -> "TwoFlat":
        """The affine hull of three affinely independent points of R^4."""
        a, b, c = (tuple(Fraction(t) for t in z) for z in (a, b, c))
        d1 = tuple(x - y for x, y in zip(b, a))
        d2 = tuple(x - y for x, y in zip(c, a))
        if _rank([d1, d2]) != 2:
            raise ValueError("points are collinear")
        normals = _nullspace([d1, d2])
        return cls(*(Hyperplane4(n, dot(n, a)) for n in normals))


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [a / lead for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _rank(vectors) -> int:
    return len(_rref([list(v) for v in vectors])[1])


def _nullspace(vectors, n: int = 4) -> list[Vec4]:
    m, pivots = _rref([list(v) for v in vectors])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        z = [Fraction(0)] * n
        z[f] = Fraction(1)
        for row, pc in zip(m, pivots):
            z[pc] = -row[f]
        basis.append(tuple(z))
    return basis


def solve_affine(hyperplanes: Sequence[Hyperplane4]) -> tuple[Vec4, list[Vec4]] | None:
    """Solve the linear system exactly: base point plus a basis of directions.

    Returns None when the hyperplanes have empty intersection.
    """
    aug = [list(h.normal) + [h.offset] for h in hyperplanes]
    m, pivots = _rref(aug)
    if 4 in pivots:
        return None
    base = [Fraction(0)] * 4
    for row, pc in zip(m, pivots):
        base[pc] = row[4]
    directions = _nullspace([h.normal for h in hyperplanes])
    return tuple(base), directions


def hyperplane_of(p: Point2, q: Point2) -> Hyperplane4:
    """The hyperplane containing C_{p,q}: normal (p1, p2, -q1, -q2), offset (|p|^2-|q|^2)/2."""
    if p == ORIGIN and q == ORIGIN:
        raise ValueError("no hyperplane for p = q = 0")
    return Hyperplane4((p[0], p[1], -q[0], -q[1]), (sq_norm(p) - sq_norm(q)) / 2)


def on_curve(p: Point2, q: Point2, z: Sequence) -> bool:
    u, v = z[:2], z[2:]
    return sq_norm(u) == 1 and sq_norm(v) == 1 and sq_dist(u, p) == sq_dist(v, q)


@dataclass(frozen=True)
class Witness:
    point: tuple  # Fractions when exact, floats otherwise
    exact: bool

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.point)


@dataclass
class FlatIntersection:
    """Result of intersecting C_{p,q} with an affine subspace.

    ``count`` is None exactly when the intersection is positive dimensional
    (the eliminating resultant vanishes identically).
    """

    count: int | None
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return self.count is None

    def __str__(self) -> str:
        return "DEGENERATE" if self.degenerate else str(self.count)


DEGENERATE = FlatIntersection(None)


def intersect_with_2flat(p: Point2, q: Point2, K: TwoFlat) -> FlatIntersection:
    """|C_{p,q} ∩ K| with witnesses, or DEGENERATE."""
    sol = solve_affine([K.h1, K.h2, hyperplane_of(p, q)])
    if sol is None:
        return FlatIntersection(0)
    base, dirs = sol
    if len(dirs) == 1:
        return _intersect_line(base, dirs[0])
    return _intersect_plane(base, dirs)


def _affine_combo(base, dirs, params) -> tuple:
    return tuple(b + sum(t * d[k] for t, d in zip(params, dirs)) for k, b in enumerate(base))


def _intersect_line(base, d) -> FlatIntersection:
    # |u0 + s du|^2 - 1 and |v0 + s dv|^2 - 1 as polynomials in s
    def circle(i):
        b, e = base[i : i + 2], d[i : i + 2]
        return UPoly((sq_norm(b) - 1, 2 * dot(b, e), sq_norm(e)))

    gu, gv = circle(0), circle(2)
    if gu.is_zero() and gv.is_zero():
        return FlatIntersection(None)
    g = upoly_gcd(gu, gv)
    witnesses = []
    for root in isolate_real_roots(g):
        s = root.value
        pt = _affine_combo(base, [d], [s])
        witnesses.append(Witness(pt if root.exact else tuple(float(c) for c in pt), root.exact))
    return FlatIntersection(len(witnesses), witnesses)


def _circle_form(base, dirs, i) -> BivarPoly:
    comps = [BivarPoly.affine(base[k], dirs[0][k], dirs[1][k]) for k in (i, i + 1)]
    return comps[0] * comps[0] + comps[1] * comps[1] - 1


_MAX_SHEARS = 64


@dataclass
class Elimination:
    """Resultant data for the two circle equations on a rational plane.

    With coordinates X, Y along ``e1``, ``e2`` from ``base``, every common root
    over Y = y0 is the single point X = -s10(y0) / s11(y0).
    """

    base: Vec4
    e1: Vec4
    e2: Vec4
    resultant: UPoly
    s10: UPoly
    s11: UPoly


def _eliminate(base, dirs) -> Elimination | FlatIntersection:
    gu, gv = _circle_form(base, dirs, 0), _circle_form(base, dirs, 2)
    for g, h in ((gu, gv), (gv, gu)):
        if g.total_degree <= 0:
            if not g.is_zero():
                return FlatIntersection(0)
            if h.total_degree > 0 or h.is_zero():
                return FlatIntersection(None)
            return FlatIntersection(0)
    if bivar_gcd(gu, gv).total_degree > 0:
        return FlatIntersection(None)

    d1, d2 = dirs
    for lam in _shears():
        e1 = tuple(a + lam * b for a, b in zip(d1, d2))
        if not any(e1[:2]) or not any(e1[2:]):
            continue
        A = _circle_form(base, (e1, d2), 0).as_poly_in_x()
        B = _circle_form(base, (e1, d2), 2).as_poly_in_x()
        # both have constant leading coefficient |e1_u|^2, |e1_v|^2 in X
        res = resultant_over_qt(A, B)
        if res.is_zero():
            return FlatIntersection(None)
        a0, a1, a2 = A
        b0, b1, b2 = B
        s11 = a2 * b1 - a1 * b2
        s10 = a2 * b0 - a0 * b2
        if upoly_gcd(res, s11).degree > 0:
            continue  # some fiber Y = y0 holds two common roots; change coordinates
        return Elimination(base, e1, d2, res, s10, s11)
    raise RuntimeError("no separating coordinate change found")


def _intersect_plane(base, dirs) -> FlatIntersection:
    elim = _eliminate(base, dirs)
    if isinstance(elim, FlatIntersection):
        return elim
    witnesses = []
    for root in isolate_real_roots(elim.resultant):
        y0 = root.value
        x0 = -elim.s10(y0) / elim.s11(y0)
        pt = _affine_combo(base, (elim.e1, elim.e2), (x0, y0))
        witnesses.append(Witness(pt if root.exact else tuple(float(c) for c in pt), root.exact))
    return FlatIntersection(len(witnesses), witnesses)


def plane_resultant(p: Point2, q: Point2, K: TwoFlat) -> UPoly | None:
    """The eliminating resultant used for C_{p,q} ∩ K when K lies in H_{p,q}.

    None when K ∩ H_{p,q} is a line, empty, or the case needs no elimination.
    """
    sol = solve_affine([K.h1, K.h2, hyperplane_of(p, q)])
    if sol is None or len(sol[1]) != 2:
        return None
    elim = _eliminate(*sol)
    return elim.resultant if isinstance(elim, Elimination) else None


def _shears():
    yield Fraction(0)
    for k in count(1):
        if k > _MAX_SHEARS:
            return
        yield Fraction(k)
        yield Fraction(-k)
        yield Fraction(1, k + 1)


def scalar_multiple(pq: Sequence, pq2: Sequence) -> Fraction | None:
    """t with pq2 = t * pq, if any."""
    t = None
    for a, b in zip(pq, pq2):
        if a == 0:
            if b != 0:
                return None
            continue
        r = b / a
        if t is None:
            t = r
        elif r != t:
            return None
    return t


def curve_pair_intersection(p: Point2, q: Point2, p2: Point2, q2: Point2) -> FlatIntersection:
    """|C_{p,q} ∩ C_{p2,q2}|; 0 without solving for distinct scalar multiples."""
    if (p, q) == (p2, q2):
        raise ValueError("identical curves intersect in the whole curve")
    h1, h2 = hyperplane_of(p, q), hyperplane_of(p2, q2)
    t = scalar_multiple((*p, *q), (*p2, *q2))
    if t is not None:
        # parallel hyperplanes with offsets in ratio t^2 against normals in ratio t
        return FlatIntersection(0)
    return intersect_with_2flat(p, q, TwoFlat(h1, h2))


def witness_residuals(p: Point2, q: Point2, w: Witness) -> tuple:
    """(hyperplane, |u|^2 - 1, |v|^2 - 1) residuals; exact zeros for exact witnesses."""
    h = hyperplane_of(p, q)
    if w.exact:
        z = w.point
        return (dot(h.normal, z) - h.offset, sq_norm(z[:2]) - 1, sq_norm(z[2:]) - 1)
    z = w.as_floats()
    return (h.residual(z), z[0] ** 2 + z[1] ** 2 - 1, z[2] ** 2 + z[3] ** 2 - 1)


# --- local continuation along C_{p,q} ---------------------------------------


class ProbeError(ValueError):
    """The probe preconditions failed or no continuation point was found."""


PROBE_TOLERANCE = 1e-12


def _circle_point_at_distance(center: Point2, dist, side: int):
    """The unit-circle point at distance ``dist`` from ``center`` on the given side
    of the line through the origin and ``center``."""
    c1, c2 = mpmath.mpf(center[0].numerator) / center[0].denominator, (
        mpmath.mpf(center[1].numerator) / center[1].denominator
    )
    r2 = c1 * c1 + c2 * c2
    r = mpmath.sqrt(r2)
    along = (1 + r2 - dist * dist) / (2 * r)  # projection onto center / |center|
    perp2 = 1 - along * along
    if perp2 < 0:
        raise ProbeError("requested distance is not attained on the unit circle")
    perp = mpmath.sqrt(perp2) * side
    return (along * c1 / r - perp * c2 / r, along * c2 / r + perp * c1 / r)


def probe_safe_radius(p: Point2, q: Point2, point: Point4) -> float:
    """Half the slack of both distances to their extreme values on the circle."""
    with mpmath.workdps(40):
        slack = []
        for center, z in ((p, point[:2]), (q, point[2:])):
            r = mpmath.sqrt(mpmath.mpf(sq_norm(center).numerator) / sq_norm(center).denominator)
            dd = sq_dist(z, center)
            d = mpmath.sqrt(mpmath.mpf(dd.numerator) / dd.denominator)
            slack += [r + 1 - d, d - abs(r - 1)]
        return float(min(slack) / 2)


def isolated_point_probe(p: Point2, q: Point2, point: Sequence, t) -> tuple[float, ...]:
    """A point of C_{p,q} whose distances to p and q both exceed those of ``point`` by t.

    Each circle point stays on the same side of the line through the origin
    and its center as the corresponding input coordinate.
    """
    point = tuple(Fraction(c) for c in point)
    if not on_curve(p, q, point):
        raise ProbeError(f"{point} is not on C_(p,q)")
    a, b = sq_norm(p), sq_norm(q)
    if a == b or norm_gap_is_two(a, b):
        raise ProbeError("probe requires |p| != |q| and ||p| - |q|| != 2")
    t = Fraction(t) if not isinstance(t, float) else t
    if t == 0:
        return tuple(float(c) for c in point)
    radius = probe_safe_radius(p, q, point)
    if not abs(float(t)) < radius:
        raise ProbeError(f"|t| = {abs(float(t))} is not below the safe radius {radius}")
    with mpmath.workdps(40):
        tt = mpmath.mpf(t.numerator) / t.denominator if isinstance(t, Fraction) else mpmath.mpf(t)
        out = []
        for center, z in ((p, point[:2]), (q, point[2:])):
            dd = sq_dist(z, center)
            d = mpmath.sqrt(mpmath.mpf(dd.numerator) / dd.denominator)
            side = 1 if cross(center, z) > 0 else -1
            w = _circle_point_at_distance(center, d + tt, side)
            got = mpmath.sqrt((w[0] - center[0]) ** 2 + (w[1] - center[1]) ** 2)
            if abs(got - (d + tt)) > PROBE_TOLERANCE or abs(w[0] ** 2 + w[1] ** 2 - 1) > PROBE_TOLERANCE:
                raise ProbeError("continuation point misses the tolerance budget")
            out.extend(w)
        return tuple(float(c) for c in out)
