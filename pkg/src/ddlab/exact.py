"""Exact rational geometry: points, the unit-circle parametrization, annulus coloring."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, NamedTuple, Sequence, Union

RationalLike = Union[Fraction, int, str]


class ExactnessError(ValueError):
    """Input cannot be represented or processed exactly."""


class Point2(NamedTuple):
    x1: Fraction
    x2: Fraction

    def __str__(self) -> str:
        return f"({self.x1}, {self.x2})"


class Point4(NamedTuple):
    u1: Fraction
    u2: Fraction
    v1: Fraction
    v2: Fraction

    @classmethod
    def join(cls, u: Sequence, v: Sequence) -> "Point4":
        return cls(u[0], u[1], v[0], v[1])

    @property
    def u(self) -> Point2:
        return Point2(self.u1, self.u2)

    @property
    def v(self) -> Point2:
        return Point2(self.v1, self.v2)


ORIGIN = Point2(Fraction(0), Fraction(0))
EXCLUDED_POINT = Point2(Fraction(-1), Fraction(0))


def parse_rational(value, exact: bool = True) -> Fraction:
    """Parse ``"a/b"``, ``"a"`` or an int into a Fraction.

    Floating-point literals (``0.5``, ``"1e-3"``) are rejected when ``exact`` is
    set; otherwise they are converted through their decimal representation.
    """
    if isinstance(value, bool):
        raise ExactnessError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if exact:
            raise ExactnessError(f"floating-point literal {value!r} rejected in exact mode")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if exact and any(ch in text for ch in ".eE"):
            raise ExactnessError(f"floating-point literal {value!r} rejected in exact mode")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ExactnessError(f"cannot parse rational {value!r}") from exc
    raise ExactnessError(f"not a rational: {value!r}")


def format_rational(r: Fraction) -> str:
    return str(r)


def point(x1: RationalLike, x2: RationalLike) -> Point2:
    return Point2(parse_rational(x1), parse_rational(x2))


def parse_point(text: str) -> Point2:
    """Parse ``"a/b,c/d"`` into a Point2."""
    parts = [s for s in text.replace(" ", "").split(",") if s]
    if len(parts) != 2:
        raise ExactnessError(f"expected two coordinates, got {text!r}")
    return point(*parts)


def sq_norm(a: Sequence[Fraction]) -> Fraction:
    return sum((c * c for c in a), Fraction(0))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def cross(a: Point2, b: Point2) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def sq_dist(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Squared Euclidean distance; all distance comparisons go through this."""
    return sum(((x - y) * (x - y) for x, y in zip(a, b)), Fraction(0))


def scale(c: Fraction, a: Point2) -> Point2:
    return Point2(c * a[0], c * a[1])


def phi(t: RationalLike) -> Point2:
    """Rational parametrization of the unit circle minus (-1, 0)."""
    t = parse_rational(t)
    d = 1 + t * t
    return Point2((1 - t * t) / d, 2 * t / d)


def phi_inverse(u: Point2) -> Fraction:
    """Inverse of :func:`phi`: ``u2 / (1 + u1)``."""
    u1, u2 = Fraction(u[0]), Fraction(u[1])
    if u1 * u1 + u2 * u2 != 1:
        raise ExactnessError(f"{Point2(u1, u2)} is not on the unit circle")
    if u1 == -1:
        raise ExactnessError("(-1, 0) is not in the image of phi")
    return u2 / (1 + u1)


def on_unit_circle(u: Sequence[Fraction]) -> bool:
    return sq_norm(u) == 1


def exact_sqrt(r: Fraction) -> Fraction | None:
    """Square root of a nonnegative rational if it is rational, else None."""
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


def norm_gap_is_two(a: Fraction, b: Fraction) -> bool:
    """Decide ``|sqrt(a) - sqrt(b)| == 2`` exactly for squared norms ``a, b >= 0``.

    ``sqrt(a) = sqrt(b) + 2`` iff ``a >= b + 4`` and ``(a - b - 4)^2 = 16 b``.
    """
    if a < b:
        a, b = b, a
    return a >= b + 4 and (a - b - 4) ** 2 == 16 * b


def annulus_index(p: Point2) -> int:
    """The k >= 0 with (2k)^2 <= |p|^2 < (2k+2)^2.

    4k^2 <= a  iff  k^2 <= floor(a/4), so an integer square root suffices.
    """
    a = sq_norm(p)
    return isqrt((a / 4).__floor__())


def annulus_filter(points: Iterable[Point2]) -> list[Point2]:
    """Keep the larger color class of alternating half-open annuli of width 2.

    Ties go to the even class. Input order is preserved.
    """
    points = list(points)
    even = [p for p in points if annulus_index(p) % 2 == 0]
    odd = [p for p in points if annulus_index(p) % 2 == 1]
    return even if len(even) >= len(odd) else odd
