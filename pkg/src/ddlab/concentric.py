"""Distances between point sets on concentric circles, via angle difference sets.

Angles are exact rotations: an ``AngleRep`` is the pair (cos, sin) of a
rational point on the unit circle, and the rotation group is the abelian group
in which difference sets and Ruzsa's triangle inequality are evaluated.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .energy import distance_set
from .exact import (
    ExactnessError,
    Point2,
    cross,
    dot,
    exact_sqrt,
    parse_rational,
    phi,
    scale,
    sq_dist,
    sq_norm,
)


class AngleRep(NamedTuple):
    """The rotation by angle theta, stored as (cos theta, sin theta)."""

    c: Fraction
    s: Fraction

    def compose(self, other: "AngleRep") -> "AngleRep":
        """Angle addition."""
        return AngleRep(self.c * other.c - self.s * other.s, self.s * other.c + self.c * other.s)

    def inverse(self) -> "AngleRep":
        return AngleRep(self.c, -self.s)

    def __sub__(self, other: "AngleRep") -> "AngleRep":  # type: ignore[override]
        return self.compose(other.inverse())

    def radians(self) -> float:
        return math.atan2(self.s, self.c)


ZERO_ANGLE = AngleRep(Fraction(1), Fraction(0))


def angle_between(p: Point2, q: Point2) -> AngleRep:
    """Oriented angle from Op to Oq.

    Needs |p| |q| rational, which holds for points on rational-radius circles.
    """
    np2, nq2 = sq_norm(p), sq_norm(q)
    if np2 == 0 or nq2 == 0:
        raise ValueError("angle with the origin is undefined")
    norms = exact_sqrt(np2 * nq2)
    if norms is None:
        raise ExactnessError(f"|p||q| is irrational for p={p}, q={q}")
    return AngleRep(dot(p, q) / norms, cross(p, q) / norms)


def difference_set(X: Iterable[AngleRep], Y: Iterable[AngleRep]) -> set[AngleRep]:
    Y = list(Y)
    return {x - y for x in X for y in Y}


def ruzsa_check(A, B, C) -> bool:
    """|A| |B - C| <= |A - B| |A - C|. A False return means a bug, not a counterexample."""
    A, B, C = set(A), set(B), set(C)
    return len(A) * len(difference_set(B, C)) <= len(difference_set(A, B)) * len(difference_set(A, C))


@dataclass
class ConcentricConfig:
    """S on the circle of radius r1 and P on radius r2, both about the origin."""

    r1: Fraction
    r2: Fraction
    s_params: list[Fraction]
    p_params: list[Fraction]

    def __post_init__(self):
        self.r1, self.r2 = Fraction(self.r1), Fraction(self.r2)
        if self.r1 <= 0 or self.r2 <= 0:
            raise ValueError("radii must be positive")
        self.s_params = [Fraction(t) for t in self.s_params]
        self.p_params = [Fraction(t) for t in self.p_params]

    @property
    def S(self) -> list[Point2]:
        return [scale(self.r1, phi(t)) for t in self.s_params]

    @property
    def P(self) -> list[Point2]:
        return [scale(self.r2, phi(t)) for t in self.p_params]

    @classmethod
    def from_json(cls, doc: dict, exact: bool = True) -> "ConcentricConfig":
        return cls(
            parse_rational(doc["r1"], exact),
            parse_rational(doc["r2"], exact),
            [parse_rational(t, exact) for t in doc["s_params"]],
            [parse_rational(t, exact) for t in doc["p_params"]],
        )

    def to_json(self) -> dict:
        return {
            "r1": str(self.r1),
            "r2": str(self.r2),
            "s_params": [str(t) for t in self.s_params],
            "p_params": [str(t) for t in self.p_params],
        }


@dataclass
class HalfPlaneSplit:
    """Sub-configurations on the closed left side of ``direction``.

    Every kept point z satisfies cross(direction, z) >= 0, so its angle measured
    from the direction lies in [0, pi].
    """

    S: list[Point2]
    P: list[Point2]
    direction: Point2


def _common_radius(points: Sequence[Point2], name: str) -> None:
    norms = {sq_norm(z) for z in points}
    if len(norms) > 1:
        raise ValueError(f"{name} is not on a single circle about the origin")
    if norms == {0}:
        raise ValueError(f"{name} sits at the origin")


def _left(d: Point2, z: Point2) -> bool:
    return cross(d, z) >= 0


def _sort_semicircle(points: list[Point2], upper: bool) -> list[Point2]:
    # on one circle, angle grows as x falls (upper half) or rises (lower half)
    return sorted(points, key=lambda z: -z[0] if upper else z[0])


def separating_line(S: Sequence[Point2], P: Sequence[Point2]) -> HalfPlaneSplit:
    """A line through the origin with |S'| >= |S|/2 and |P'| >= |P|/4 on one closed side.

    If every point already fits in a closed half-plane bounded by a line through
    one of them, that line is used and nothing is dropped. Otherwise P is cut
    to its majority half-open semicircle, the line goes through the median point
    of what is left, and the side holding more of S is kept.
    """
    S, P = list(S), list(P)
    if not S or not P:
        raise ValueError("S and P must be nonempty")
    _common_radius(S, "S")
    _common_radius(P, "P")

    for d in P + S:
        if all(_left(d, z) for z in S + P):
            return HalfPlaneSplit(S, P, d)

    upper = [z for z in P if z[1] > 0 or (z[1] == 0 and z[0] > 0)]
    lower = [z for z in P if not (z[1] > 0 or (z[1] == 0 and z[0] > 0))]
    half, is_upper = (upper, True) if len(upper) >= len(lower) else (lower, False)
    ordered = _sort_semicircle(half, is_upper)
    d = ordered[len(ordered) // 2]
    left_s = sum(_left(d, z) for z in S)
    right_s = sum(_left(d, z) for z in (Point2(-z[0], -z[1]) for z in S))
    if right_s > left_s:
        d = Point2(-d[0], -d[1])
    return HalfPlaneSplit([z for z in S if _left(d, z)], [z for z in half if _left(d, z)], d)


def angle_sets(split: HalfPlaneSplit) -> tuple[set[AngleRep], set[AngleRep]]:
    """Angles of the kept S and P points, measured from the split direction."""
    d = split.direction
    return {angle_between(d, u) for u in split.S}, {angle_between(d, p) for p in split.P}


@dataclass
class AngleMultiplicity:
    m: int  # over all ordered pairs, diagonal included
    offdiag: int  # over ordered pairs of distinct indices
    alpha_hat: float


def max_angle_multiplicity(P: Sequence[Point2]) -> AngleMultiplicity:
    """Largest number of ordered pairs (p, q) realizing one oriented angle."""
    P = list(P)
    if len(P) < 2:
        raise ValueError("need at least two points")
    diag: Counter = Counter()
    off: Counter = Counter()
    for i, p in enumerate(P):
        for j, q in enumerate(P):
            (diag if i == j else off)[angle_between(p, q)] += 1
    total = diag + off
    m = max(total.values())
    return AngleMultiplicity(m, max(off.values(), default=0), math.log(m) / (2 * math.log(len(P))))


@dataclass
class ChainReport:
    delta: int  # distinct squared distances between the kept S and P
    a_minus_b: int
    b_minus_b: int
    m: int
    size_a: int
    size_b: int
    delta_full: int
    checks: dict = field(default_factory=dict)

    @property
    def chain_ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        out = asdict(self)
        out["chain_ok"] = self.chain_ok
        return out


def concentric_distance_bound(cfg: ConcentricConfig) -> ChainReport:
    """Evaluate the distance / difference-set / Ruzsa chain exactly on one configuration."""
    S, P = cfg.S, cfg.P
    split = separating_line(S, P)
    A, B = angle_sets(split)
    delta = len(distance_set(split.S, split.P))
    amb = len(difference_set(A, B))
    bmb = len(difference_set(B, B))
    m = max_angle_multiplicity(split.P).m if len(split.P) > 1 else 1
    checks = {
        "delta_vs_a_minus_b": 2 * delta >= amb,
        "ruzsa": amb * amb >= len(A) * bmb,
        "b_minus_b_vs_multiplicity": bmb * m >= len(B) ** 2,
        # |Delta| >= (1/2) (|A||B|^2 / M)^(1/2), squared
        "final_bound": 4 * delta * delta * m >= len(A) * len(B) ** 2,
    }
    return ChainReport(
        delta=delta,
        a_minus_b=amb,
        b_minus_b=bmb,
        m=m,
        size_a=len(A),
        size_b=len(B),
        delta_full=len(distance_set(S, P)),
        checks=checks,
    )


def distance_law_holds(cfg: ConcentricConfig) -> bool:
    """|u - p|^2 = r1^2 + r2^2 - 2 r1 r2 cos(angle from u to p) for every pair."""
    r1, r2 = cfg.r1, cfg.r2
    for u in cfg.S:
        for p in cfg.P:
            c = angle_between(u, p).c
            if sq_dist(u, p) != r1 * r1 + r2 * r2 - 2 * r1 * r2 * c:
                return False
    return True


def cosine_fibers(X: Iterable[AngleRep]) -> Counter:
    """Number of angles in X sharing each cosine; every fiber has size <= 2."""
    return Counter(a.c for a in X)


# --- approximate mode ------------------------------------------------------

APPROX_REL_TOL = 1e-9


def even_spaced_counterexample(n: int, scale_factor: float) -> tuple[np.ndarray, np.ndarray]:
    """n evenly spaced unit-circle points S and the scaled copy P = scale * S (floats)."""
    if n < 1:
        raise ValueError("n must be positive")
    if not scale_factor > 0 or scale_factor == 1:
        raise ValueError("scale must be positive and different from 1")
    theta = 2 * np.pi * np.arange(n) / n
    S = np.column_stack([np.cos(theta), np.sin(theta)])
    return S, scale_factor * S


def approx_distinct_sq_distances(S: np.ndarray, P: np.ndarray, rel_tol: float = APPROX_REL_TOL) -> int:
    """Count squared distances after merging values within ``rel_tol`` of a cluster's first value."""
    d = ((S[:, None, :] - P[None, :, :]) ** 2).sum(axis=-1).ravel()
    if d.size == 0:
        return 0
    d.sort()
    clusters = 1
    start = d[0]
    for value in d[1:]:
        if value - start > rel_tol * max(abs(value), abs(start)):
            clusters += 1
            start = value
    return clusters
