"""Exact polynomial algebra over the rationals.

``UPoly`` is a univariate polynomial (coefficients low to high), ``BivarPoly``
a sparse bivariate polynomial keyed by exponent pairs ``(i, j)`` for ``x^i y^j``.
Multivariate gcds use the subresultant pseudo-remainder sequence over Q[x][y]
with contents taken in Q[x]; real roots are counted with Sturm sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    c = [Fraction(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UPoly:
    """Univariate polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        self.c = _trim(coeffs)

    @classmethod
    def const(cls, a) -> "UPoly":
        return cls((a,))

    @classmethod
    def x(cls) -> "UPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.c) - 1

    @property
    def lc(self) -> Fraction:
        return self.c[-1] if self.c else ZERO

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other)
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"UPoly({[str(a) for a in self.c]})"

    def __add__(self, other) -> "UPoly":
        other = _as_upoly(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (ZERO,) * (n - len(self.c))
        b = other.c + (ZERO,) * (n - len(other.c))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly(-a for a in self.c)

    def __sub__(self, other) -> "UPoly":
        return self + (-_as_upoly(other))

    def __rsub__(self, other) -> "UPoly":
        return _as_upoly(other) - self

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            return UPoly(a * other for a in self.c)
        if not self.c or not other.c:
            return UPoly()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        out = UPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, t):
        acc = ZERO if not isinstance(t, float) else 0.0
        for a in reversed(self.c):
            acc = acc * t + a
        return acc

    def derivative(self) -> "UPoly":
        return UPoly(i * a for i, a in enumerate(self.c) if i)

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(other.c)
        if dq < 0:
            return UPoly(), self
        quo = [ZERO] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            coef = rem[k + other.degree] / lc
            quo[k] = coef
            if coef:
                for j, b in enumerate(other.c):
                    rem[k + j] -= coef * b
        return UPoly(quo), UPoly(rem[: other.degree])

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def exact_div(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            return UPoly(a / other for a in self.c)
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "UPoly":
        return self if self.is_zero() else UPoly(a / self.lc for a in self.c)

    def content_free(self, keep_sign: bool = False) -> "UPoly":
        """Scale to integer coefficients with gcd 1 and positive leading term.

        With ``keep_sign`` only positive scalings are used.
        """
        if self.is_zero():
            return self
        den = lcm(*(a.denominator for a in self.c))
        ints = [int(a * den) for a in self.c]
        g = gcd(*ints)
        if ints[-1] < 0 and not keep_sign:
            g = -g
        return UPoly(Fraction(a, g) for a in ints)


def _as_upoly(a) -> UPoly:
    return a if isinstance(a, UPoly) else UPoly.const(a)


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over Q (zero if both are zero)."""
    while b:
        a, b = b, (a % b).content_free()
    return a.monic()


def squarefree_part(p: UPoly) -> UPoly:
    if p.degree <= 0:
        return p
    return p.exact_div(upoly_gcd(p, p.derivative()))


# --- Sturm sequences -------------------------------------------------------


def sturm_sequence(p: UPoly) -> list[UPoly]:
    """p, p', then negated remainders. Terms are rescaled by positive constants
    only, which leaves every sign pattern unchanged."""
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p.content_free(True), p.derivative().content_free(True)]
    while seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r.content_free(True))
    return [s for s in seq if not s.is_zero()]


def _sign(a) -> int:
    return (a > 0) - (a < 0)


def _variations(signs: Iterable[int]) -> int:
    last = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _signs_at(seq: Sequence[UPoly], t) -> list[int]:
    if t == "+inf":
        return [_sign(s.lc) for s in seq]
    if t == "-inf":
        return [_sign(s.lc) * (-1 if s.degree % 2 else 1) for s in seq]
    return [_sign(s(t)) for s in seq]


def count_real_roots(p: UPoly, lo=None, hi=None, seq=None) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi].

    ``None`` bounds mean -infinity / +infinity.
    """
    if p.degree <= 0:
        if p.is_zero():
            raise ValueError("zero polynomial has infinitely many roots")
        return 0
    seq = seq or sturm_sequence(p)
    va = _variations(_signs_at(seq, "-inf" if lo is None else lo))
    vb = _variations(_signs_at(seq, "+inf" if hi is None else hi))
    return va - vb


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lc = abs(p.lc)
    return 1 + max((abs(a) / lc for a in p.c[:-1]), default=ZERO)


@dataclass(frozen=True)
class RealRoot:
    """An isolated real root in ``(lo, hi]``; ``exact`` holds when lo == hi is the root."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        return self.lo if self.exact else (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.value)


def isolate_real_roots(p: UPoly, width: Fraction = Fraction(1, 10**30)) -> list[RealRoot]:
    """Isolate and refine every distinct real root of p, in increasing order.

    Roots are refined by bisection until the interval is narrower than
    ``width``; a root that is hit exactly, or recognized as a simple rational
    by a verified denominator-limited guess, is returned with lo == hi.
    """
    if p.degree <= 0:
        return []
    sf = squarefree_part(p).content_free()
    seq = sturm_sequence(sf)
    bound = root_bound(sf)
    stack = [(-bound, bound)]
    isolated = []
    while stack:
        a, b = stack.pop()
        n = count_real_roots(sf, a, b, seq)
        if n == 0:
            continue
        if n == 1:
            isolated.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((a, m))
        stack.append((m, b))
    roots = [_refine(sf, a, b, width) for a, b in isolated]
    return sorted(roots, key=lambda r: r.lo)


def _refine(sf: UPoly, a: Fraction, b: Fraction, width: Fraction) -> RealRoot:
    # sf is squarefree with exactly one root in (a, b], so it changes sign there
    if sf(b) == 0:
        return RealRoot(b, b)
    sa = _sign(sf(a))
    while b - a > width:
        m = (a + b) / 2
        sm = _sign(sf(m))
        if sm == 0:
            return RealRoot(m, m)
        if sm == sa:
            a = m
        else:
            b = m
        guess = ((a + b) / 2).limit_denominator(1 << 20)
        if a < guess <= b and sf(guess) == 0:
            return RealRoot(guess, guess)
    return RealRoot(a, b)


# --- polynomials over Q[t] (coefficient lists of UPoly) --------------------

PolyOverQt = list  # list[UPoly], lowest degree first, no trailing zeros


def _ptrim(p: PolyOverQt) -> PolyOverQt:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _pdeg(p: PolyOverQt) -> int:
    return len(p) - 1


def _pmul_scalar(p: PolyOverQt, s: UPoly) -> PolyOverQt:
    return _ptrim([a * s for a in p])


def _pdiv_scalar(p: PolyOverQt, s: UPoly) -> PolyOverQt:
    return [a.exact_div(s) for a in p]


def prem(a: PolyOverQt, b: PolyOverQt) -> PolyOverQt:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, in Q[t][y]."""
    a, b = _ptrim(a), _ptrim(b)
    if not b:
        raise ZeroDivisionError("pseudo-division by zero")
    db = _pdeg(b)
    lcb = b[-1]
    r = list(a)
    e = _pdeg(a) - db + 1
    while r and _pdeg(r) >= db:
        shift = _pdeg(r) - db
        lr = r[-1]
        r = [c * lcb for c in r]
        for j, bc in enumerate(b):
            r[j + shift] = r[j + shift] - lr * bc
        r = _ptrim(r)
        e -= 1
    if e > 0:
        r = _pmul_scalar(r, lcb**e)
    return r


def subresultant_prs(a: PolyOverQt, b: PolyOverQt) -> list[PolyOverQt]:
    """Subresultant pseudo-remainder sequence of a, b in Q[t][y]."""
    a, b = _ptrim(a), _ptrim(b)
    if _pdeg(a) < _pdeg(b):
        a, b = b, a
    seq = [a, b]
    if not b:
        return seq[:1]
    d = _pdeg(a) - _pdeg(b)
    beta = UPoly.const((-1) ** (d + 1))
    psi = UPoly.const(-1)
    while True:
        r = prem(seq[-2], seq[-1])
        if not r:
            break
        r = _pdiv_scalar(r, beta)
        gamma = seq[-1][-1]
        seq.append(r)
        d_prev = d
        d = _pdeg(seq[-2]) - _pdeg(r)
        # psi_{i+1} = (-gamma_i)^d_i / psi_i^(d_i - 1); unchanged when d_i == 0
        if d_prev > 0:
            psi = ((-gamma) ** d_prev).exact_div(psi ** (d_prev - 1))
        beta = -gamma * psi**d
    return seq


def content(p: PolyOverQt) -> UPoly:
    g = UPoly()
    for a in p:
        g = upoly_gcd(g, a)
        if g.degree == 0:
            return UPoly.const(1)
    return g


def primitive_part(p: PolyOverQt) -> PolyOverQt:
    p = _ptrim(p)
    if not p:
        return p
    return _pdiv_scalar(p, content(p))


def gcd_over_qt(a: PolyOverQt, b: PolyOverQt) -> PolyOverQt:
    """gcd in Q[t][y], normalized to be primitive with monic content."""
    a, b = _ptrim(a), _ptrim(b)
    if not a:
        return b
    if not b:
        return a
    c = upoly_gcd(content(a), content(b))
    pa, pb = primitive_part(a), primitive_part(b)
    g = primitive_part(subresultant_prs(pa, pb)[-1])
    if _pdeg(g) == 0:
        return [c]
    return _pmul_scalar(g, c)


def resultant_over_qt(a: PolyOverQt, b: PolyOverQt) -> UPoly:
    """Resultant in y of a, b in Q[t][y], as the Sylvester determinant."""
    a, b = _ptrim(a), _ptrim(b)
    m, n = _pdeg(a), _pdeg(b)
    if m < 0 or n < 0:
        return UPoly()
    if m == 0 and n == 0:
        return UPoly.const(1)
    size = m + n
    rows = []
    for i in range(n):
        row = [UPoly()] * size
        for j, coef in enumerate(reversed(a)):
            row[i + j] = coef
        rows.append(row)
    for i in range(m):
        row = [UPoly()] * size
        for j, coef in enumerate(reversed(b)):
            row[i + j] = coef
        rows.append(row)
    return bareiss_det(rows)


def bareiss_det(matrix: list[list[UPoly]]) -> UPoly:
    """Fraction-free determinant over Q[t]; all divisions are exact."""
    m = [list(r) for r in matrix]
    n = len(m)
    sign = 1
    prev = UPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return UPoly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


# --- bivariate polynomials -------------------------------------------------


class BivarPoly:
    """Sparse polynomial in x, y: ``{(i, j): coefficient of x^i y^j}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {
            (int(i), int(j)): Fraction(c) for (i, j), c in (coeffs or {}).items() if c != 0
        }

    @classmethod
    def const(cls, a) -> "BivarPoly":
        return cls({(0, 0): a})

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    @classmethod
    def affine(cls, c0, cx, cy) -> "BivarPoly":
        return cls({(0, 0): c0, (1, 0): cx, (0, 1): cy})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.const(other)
        return isinstance(other, BivarPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in sorted(self.coeffs.items(), reverse=True):
            mono = "*".join(
                s for s in (f"x^{i}" if i > 1 else "x" * i, f"y^{j}" if j > 1 else "y" * j) if s
            )
            terms.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(terms)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.coeffs), default=-1)

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def __add__(self, other) -> "BivarPoly":
        other = _as_bivar(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other) -> "BivarPoly":
        return self + (-_as_bivar(other))

    def __rsub__(self, other) -> "BivarPoly":
        return _as_bivar(other) - self

    def __mul__(self, other) -> "BivarPoly":
        if isinstance(other, (int, Fraction)):
            return BivarPoly({k: c * other for k, c in self.coeffs.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivarPoly":
        out = BivarPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x, y):
        total = ZERO if not (isinstance(x, float) or isinstance(y, float)) else 0.0
        for (i, j), c in self.coeffs.items():
            total += c * x**i * y**j
        return total

    def vanishes_at(self, x: Fraction, y: Fraction) -> bool:
        return self(Fraction(x), Fraction(y)) == 0

    def swap_xy(self) -> "BivarPoly":
        return BivarPoly({(j, i): c for (i, j), c in self.coeffs.items()})

    def as_poly_in_y(self) -> PolyOverQt:
        """Coefficients in y (lowest first), each a UPoly in x."""
        rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), c in self.coeffs.items():
            rows.setdefault(j, {})[i] = c
        out = []
        for j in range(self.degree_y + 1):
            row = rows.get(j, {})
            out.append(UPoly(row.get(i, ZERO) for i in range(max(row, default=-1) + 1)))
        return out

    def as_poly_in_x(self) -> PolyOverQt:
        """Coefficients in x (lowest first), each a UPoly in y."""
        return self.swap_xy().as_poly_in_y()

    @classmethod
    def from_poly_in_y(cls, p: PolyOverQt) -> "BivarPoly":
        return cls({(i, j): c for j, a in enumerate(p) for i, c in enumerate(a.c)})

    def exact_div_x(self, d: UPoly) -> "BivarPoly":
        """Divide by a polynomial in x alone; raises if it does not divide."""
        return BivarPoly.from_poly_in_y([a.exact_div(d) for a in self.as_poly_in_y()])

    def exact_div_y(self, d: UPoly) -> "BivarPoly":
        return self.swap_xy().exact_div_x(d).swap_xy()

    def divisible_by_x(self, d: UPoly) -> bool:
        return all(not (a % d) for a in self.as_poly_in_y())

    def divisible_by_y(self, d: UPoly) -> bool:
        return self.swap_xy().divisible_by_x(d)


def _as_bivar(a) -> BivarPoly:
    return a if isinstance(a, BivarPoly) else BivarPoly.const(a)


def bivar_gcd(f: BivarPoly, g: BivarPoly) -> BivarPoly:
    """gcd over Q, up to a rational scalar, via Q[x][y] subresultants."""
    if f.is_zero() and g.is_zero():
        return BivarPoly()
    h = gcd_over_qt(f.as_poly_in_y(), g.as_poly_in_y())
    return BivarPoly.from_poly_in_y(h)
