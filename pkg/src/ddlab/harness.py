"""Seeded generators, experiment configuration and the bound-ratio report."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from pathlib import Path
from typing import Iterator, TextIO

from .energy import (
    diagonal_quadruples,
    distance_histogram,
    energy_lower_bound,
)
from .exact import ORIGIN, Point2, annulus_index, norm_gap_is_two, phi, sq_norm

DEFAULT_BOUND = 64
PLANE_GENERATORS = ("random", "lattice", "perturbed-lattice")


class InvariantError(AssertionError):
    """An exact invariant failed; the CLI maps this to exit code 2."""


def random_rational(rng: random.Random, bound: int = DEFAULT_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def gen_circle(n: int, seed: int, bound: int = DEFAULT_BOUND) -> list[Fraction]:
    """n distinct circle parameters; their images under phi are distinct and avoid (-1, 0).

    Draws are sequential, so the result for n is a prefix of the result for n + 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    seen: set[Fraction] = set()
    out = []
    while len(out) < n:
        t = random_rational(rng, bound)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def circle_points(params) -> list[Point2]:
    return [phi(t) for t in params]


def _candidates(kind: str, rng: random.Random, bound: int) -> Iterator[Point2]:
    if kind == "random":
        while True:
            yield Point2(random_rational(rng, bound), random_rational(rng, bound))
    elif kind in ("lattice", "perturbed-lattice"):
        for radius in count(1):
            ring = [
                (i, j)
                for i in range(-radius, radius + 1)
                for j in range(-radius, radius + 1)
                if max(abs(i), abs(j)) == radius
            ]
            rng.shuffle(ring)
            for i, j in ring:
                if kind == "lattice":
                    yield Point2(Fraction(i), Fraction(j))
                else:
                    yield Point2(
                        i + Fraction(rng.randint(-bound, bound), bound * bound),
                        j + Fraction(rng.randint(-bound, bound), bound * bound),
                    )
    else:
        raise ValueError(f"unknown generator {kind!r}; expected one of {PLANE_GENERATORS}")


def gen_generic_plane(
    n: int, seed: int, kind: str = "random", bound: int = DEFAULT_BOUND
) -> list[Point2]:
    """n rational points with distinct squared norms, no origin, no norm gap of 2.

    Candidates are kept only in even annuli, so the output is its own
    annulus_filter image.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    out: list[Point2] = []
    norms: set[Fraction] = set()
    for cand in _candidates(kind, rng, bound):
        if len(out) == n:
            break
        a = sq_norm(cand)
        if cand == ORIGIN or a in norms or annulus_index(cand) % 2:
            continue
        if any(norm_gap_is_two(a, b) for b in norms):
            continue
        norms.add(a)
        out.append(cand)
    return out


def gen_concentric(n_s: int, n_p: int, seed: int, bound: int = DEFAULT_BOUND):
    """Random concentric configuration with rational radii."""
    from .concentric import ConcentricConfig

    rng = random.Random(seed)
    r1 = Fraction(rng.randint(1, bound), rng.randint(1, bound))
    r2 = Fraction(rng.randint(1, bound), rng.randint(1, bound))
    return ConcentricConfig(
        r1, r2, gen_circle(n_s, rng.randrange(2**32), bound), gen_circle(n_p, rng.randrange(2**32), bound)
    )


@dataclass
class ExperimentConfig:
    generator: str = "random"
    s_sizes: list[int] = field(default_factory=lambda: [8, 16, 32, 64])
    p_sizes: list[int] | None = None  # defaults to s_sizes
    seed: int = 0
    mode: str = "exact"
    out: str | None = None
    epsilon: float = 0.01
    bound: int = DEFAULT_BOUND

    def __post_init__(self):
        if self.p_sizes is None:
            self.p_sizes = list(self.s_sizes)
        if any(int(n) < 1 for n in list(self.s_sizes) + list(self.p_sizes)):
            raise ValueError("sizes must be positive")
        if not 0 < self.epsilon < 0.25:
            raise ValueError("epsilon must lie in (0, 1/4)")
        if self.mode not in ("exact", "approx", "approximate"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.generator not in PLANE_GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")

    @classmethod
    def from_json(cls, doc: dict) -> "ExperimentConfig":
        known = {k: doc[k] for k in cls.__dataclass_fields__ if k in doc}
        if "sizes" in doc and "s_sizes" not in known:
            known["s_sizes"] = doc["sizes"]
        return cls(**known)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass
class BoundReportRow:
    s: int
    p: int
    delta: int
    bound: float
    ratio: float
    energy_lower_bound: Fraction
    q: int
    q_tilde: int
    diagonal: int


CSV_HEADER = ["s", "p", "delta", "bound", "ratio", "energy_lower_bound", "q", "q_tilde", "diagonal"]


def theorem_bound(s: int, p: int, epsilon: float) -> float:
    """min(|S||P|^(1/4-eps), |S|^(2/3)|P|^(2/3), |S|^2, |P|^2)."""
    return min(s * p ** (0.25 - epsilon), (s * p) ** (2 / 3), float(s * s), float(p * p))


def report_row(S, P, epsilon: float) -> BoundReportRow:
    hist = distance_histogram(S, P)
    delta = len(hist)
    q = sum(v * v for v in hist.values())
    diagonal = diagonal_quadruples(S, P)
    n = len(S) * len(P)
    if delta * q < n * n:
        raise InvariantError(f"energy inequality fails for |S|={len(S)}, |P|={len(P)}")
    if not n <= diagonal <= 2 * n:
        raise InvariantError(f"diagonal count {diagonal} outside [|S||P|, 2|S||P|]")
    bound = theorem_bound(len(S), len(P), epsilon)
    return BoundReportRow(
        s=len(S),
        p=len(P),
        delta=delta,
        bound=bound,
        ratio=delta / bound,
        energy_lower_bound=energy_lower_bound(S, P),
        q=q,
        q_tilde=q - diagonal,
        diagonal=diagonal,
    )


def bound_report(config: ExperimentConfig) -> list[BoundReportRow]:
    """One row per (|S|, |P|) in sweep order. Ratios are reported, never asserted."""
    rows = []
    for s in config.s_sizes:
        S = circle_points(gen_circle(s, config.seed, config.bound))
        for p in config.p_sizes:
            P = gen_generic_plane(p, config.seed + 1, config.generator, config.bound)
            rows.append(report_row(S, P, config.epsilon))
    return rows


def write_bound_csv(rows, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [r.s, r.p, r.delta, repr(r.bound), repr(r.ratio), str(r.energy_lower_bound), r.q, r.q_tilde, r.diagonal]
        )


def bound_csv(rows) -> str:
    buf = io.StringIO()
    write_bound_csv(rows, buf)
    return buf.getvalue()


def save_bound_csv(rows, path) -> None:
    path = Path(path)
    try:
        path.write_text(bound_csv(rows))
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
