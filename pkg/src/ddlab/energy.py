"""Distance sets, multiplicity histograms and quadruple (energy) counts.

Distances are handled as exact squared distances throughout; equality of
nonnegative distances is equivalent to equality of their squares.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Sequence

from .exact import ExactnessError, Point2, on_unit_circle, sq_dist


def distance_histogram(S: Sequence[Point2], P: Sequence[Point2]) -> Counter:
    """Map each squared distance t to v(t) = #{(u, p) in S x P : |u-p|^2 = t}."""
    return Counter(sq_dist(u, p) for u in S for p in P)


def distance_set(S, P) -> set[Fraction]:
    return set(distance_histogram(S, P))


def quadruple_count(S, P) -> int:
    """|Q(S,P)| as the sum of squared multiplicities."""
    return sum(v * v for v in distance_histogram(S, P).values())


def diagonal_quadruples(S, P) -> int:
    """Quadruples (u, v, p, p); at most 2|S||P| for S on the unit circle.

    A circle about p meets the unit circle at most twice, so each pinned
    multiplicity is at most 2 when the circle's center is not p.
    """
    for u in S:
        if not on_unit_circle(u):
            raise ExactnessError(f"{u} is not on the unit circle")
    return _diagonal(S, P)


def _diagonal(S, P) -> int:
    total = 0
    for p in P:
        pinned = Counter(sq_dist(u, p) for u in S)
        total += sum(v * v for v in pinned.values())
    return total


def quadruple_count_offdiag(S, P) -> int:
    """|Q~(S,P)|: quadruples with p != q. P must not repeat points."""
    if len(set(P)) != len(P):
        raise ValueError("P contains repeated points")
    return quadruple_count(S, P) - _diagonal(S, P)


def energy_lower_bound(S, P) -> Fraction:
    """(|S||P|)^2 / |Q(S,P)|, a lower bound on the number of distinct distances."""
    if not S or not P:
        raise ValueError("S and P must be nonempty")
    return Fraction((len(S) * len(P)) ** 2, quadruple_count(S, P))


def brute_force_quadruples(S, P, offdiag: bool = False) -> int:
    """Enumerate all |S|^2 |P|^2 quadruples. Test oracle only."""
    count = 0
    for p_idx, p in enumerate(P):
        for q_idx, q in enumerate(P):
            if offdiag and p_idx == q_idx:
                continue
            for u in S:
                d = sq_dist(u, p)
                for v in S:
                    if d == sq_dist(v, q):
                        count += 1
    return count


def energy_inequality_holds(S, P) -> bool:
    """|Delta| * |Q| >= (|S||P|)^2, checked in integers."""
    hist = distance_histogram(S, P)
    return len(hist) * sum(v * v for v in hist.values()) >= (len(S) * len(P)) ** 2
