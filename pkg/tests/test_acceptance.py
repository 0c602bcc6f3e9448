"""The ten acceptance criteria, each at its stated size and tolerance.

Every test records one PASS/FAIL line, printed in the terminal summary (and
immediately with ``-s``). Run alone with ``pytest tests/test_acceptance.py``.
"""

import random
import time
from fractions import Fraction as F

from conftest import ACCEPTANCE
from ddlab.concentric import (
    AngleRep,
    concentric_distance_bound,
    ruzsa_check,
    approx_distinct_sq_distances,
    even_spaced_counterexample,
)
from ddlab.curves import build_F, common_component_check, incidence_count, ordered_pairs
from ddlab.energy import (
    brute_force_quadruples,
    diagonal_quadruples,
    distance_set,
    energy_lower_bound,
    quadruple_count,
    quadruple_count_offdiag,
)
from ddlab.exact import ORIGIN, Point2, on_unit_circle, phi
from ddlab.harness import (
    ExperimentConfig,
    bound_csv,
    bound_report,
    circle_points,
    gen_circle,
    gen_concentric,
    gen_generic_plane,
    random_rational,
)
from ddlab.r4 import Hyperplane4, TwoFlat, hyperplane_of, intersect_with_2flat
from ddlab.suites import component_suite, flat_suite, pair_suite, random_pq, scalar_multiple_suite, summarize

SEED = 20240601


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


# --- shared instances, regenerated deterministically --------------------------


def identity_instances():
    rng = random.Random(SEED)
    for _ in range(100):
        ns, np_ = rng.randint(1, 12), rng.randint(1, 12)
        params = gen_circle(ns, rng.randrange(2**32))
        yield params, circle_points(params), gen_generic_plane(np_, rng.randrange(2**32))


def micro_instance():
    params = [F(0), F(1), F(1, 2)]
    return params, circle_points(params), [Point2(F(2), F(0)), Point2(F(7, 5), F(1, 5))]


def concentric_configs():
    rng = random.Random(SEED + 7)
    for _ in range(50):
        yield gen_concentric(rng.randint(1, 32), rng.randint(1, 32), rng.randrange(2**32))


SWEEP = ExperimentConfig(s_sizes=[8, 16, 32, 64], epsilon=0.01, seed=SEED)


# --- criteria -----------------------------------------------------------------


def test_criterion_01_incidence_identity():
    start = time.perf_counter()
    bad = 0
    for params, S, P in identity_instances():
        incidences = incidence_count(params, ordered_pairs(P))
        q = quadruple_count(S, P)
        if incidences != quadruple_count_offdiag(S, P) or q != brute_force_quadruples(S, P):
            bad += 1
    elapsed = time.perf_counter() - start
    record(1, bad == 0 and elapsed < 60, f"100 instances, {bad} mismatches, {elapsed:.1f}s (limit 60s)")


def test_criterion_02_micro_instance():
    params, S, P = micro_instance()
    got = (
        len(distance_set(S, P)),
        quadruple_count(S, P),
        quadruple_count_offdiag(S, P),
        diagonal_quadruples(S, P),
        incidence_count(params, ordered_pairs(P)),
        energy_lower_bound(S, P),
        brute_force_quadruples(S, P),
    )
    want = (4, 10, 4, 6, 4, F(18, 5), 10)
    record(2, got == want and got[5] <= got[0], f"(delta, Q, Q~, diag, I, bound, brute) = {tuple(map(str, got))}")


def test_criterion_03_degree_bound():
    rng = random.Random(SEED + 3)
    worst = max(build_F(*random_pq(rng)).total_degree for _ in range(1000))
    observed = build_F(Point2(F(2), F(0)), Point2(F(7, 5), F(1, 5))).total_degree
    # the specific pair's degree is reported, not asserted
    record(3, worst <= 12, f"max total degree over 1000 pairs = {worst}; F_((2,0),(7/5,1/5)) has degree {observed}")


def test_criterion_04_flat_intersections():
    start = time.perf_counter()
    summary = summarize("2-flat", flat_suite(500, SEED + 4))
    p, q = Point2(F(2), F(0)), Point2(F(7, 5), F(1, 5))
    hand = intersect_with_2flat(p, q, TwoFlat(Hyperplane4((0, 1, 0, 0), F(4, 5)), hyperplane_of(p, q)))
    hand_ok = hand.count == 2 and {w.point for w in hand.witnesses} == {
        (F(3, 5), F(4, 5), 0, 1),
        (F(3, 5), F(4, 5), F(7, 25), F(-24, 25)),
    }
    elapsed = time.perf_counter() - start
    ok = summary.ok and summary.max_count <= 4 and hand_ok and elapsed < 120
    record(
        4,
        ok,
        f"500 flats: max count {summary.max_count}, {summary.degenerate} degenerate, "
        f"{len(summary.failures)} failures; hand example count {hand.count}; {elapsed:.1f}s (limit 120s)",
    )


def test_criterion_05_curve_pairs():
    summary = summarize("pair", pair_suite(500, SEED + 5))
    scalar = scalar_multiple_suite(100, SEED + 6)
    zeros = sum(r.result.count == 0 for r in scalar)
    ok = summary.ok and summary.max_count <= 4 and zeros == 100
    record(
        5,
        ok,
        f"500 pairs: max count {summary.max_count}, {summary.degenerate} degenerate, "
        f"{len(summary.failures)} failures; "
        f"scalar multiples returning 0: {zeros}/100",
    )


def test_criterion_06_no_common_component():
    records = component_suite(200, SEED + 8)
    shared = sum(r.shared for r in records)
    Fpq = build_F(Point2(F(2), F(0)), Point2(F(7, 5), F(1, 5)))
    self_shared = common_component_check(Fpq, Fpq)
    record(6, len(records) == 200 and shared == 0 and self_shared, f"{shared}/{len(records)} random pairs share a component; (F, F) -> {self_shared}")


def _angles(rng, n):
    return {AngleRep(*phi(random_rational(rng, 8))) for _ in range(n)}


def test_criterion_07_concentric_chain():
    failed = [rep for rep in map(concentric_distance_bound, concentric_configs()) if not rep.chain_ok]
    rng = random.Random(SEED + 9)
    ruzsa_bad = sum(not ruzsa_check(*(_angles(rng, rng.randint(1, 12)) for _ in range(3))) for _ in range(200))
    record(7, not failed and ruzsa_bad == 0, f"50 configs: {len(failed)} chain failures; 200 Ruzsa triples: {ruzsa_bad} failures")


def test_criterion_08_counterexample():
    start = time.perf_counter()
    big = approx_distinct_sq_distances(*even_spaced_counterexample(64, 3))
    small = approx_distinct_sq_distances(*even_spaced_counterexample(4, 2))
    elapsed = time.perf_counter() - start
    record(8, big <= 64 and small == 3 and elapsed < 1, f"n=64: {big} distances; n=4: {small}; {elapsed:.3f}s (limit 1s)")


def _energy_ok(S, P, unit_circle: bool) -> bool:
    n = len(S) * len(P)
    if len(distance_set(S, P)) * quadruple_count(S, P) < n * n:
        return False
    if unit_circle and ORIGIN not in P:
        return diagonal_quadruples(S, P) <= 2 * n
    return True


def test_criterion_09_energy_everywhere():
    checked = bad = 0
    for _, S, P in list(identity_instances()) + [micro_instance()]:
        checked += 1
        bad += not _energy_ok(S, P, all(on_unit_circle(u) for u in S))
    for cfg in concentric_configs():
        checked += 1
        bad += not _energy_ok(cfg.S, cfg.P, cfg.r1 == 1)
    for s in SWEEP.s_sizes:
        S = circle_points(gen_circle(s, SWEEP.seed))
        for p in SWEEP.p_sizes:
            checked += 1
            bad += not _energy_ok(S, gen_generic_plane(p, SWEEP.seed + 1), True)
    record(9, bad == 0, f"{checked} instances checked, {bad} violations")


def test_criterion_10_bound_report():
    first = bound_csv(bound_report(SWEEP))
    second = bound_csv(bound_report(SWEEP))
    lines = first.splitlines()
    rows = [line.split(",") for line in lines[1:]]
    ratios = ", ".join(f"{r[0]}x{r[1]}:{float(r[4]):.3g}" for r in rows)
    ok = first == second and len(rows) == 16 and all(float(r[4]) > 0 for r in rows)
    record(10, ok, f"16-row sweep deterministic={first == second}; ratios {ratios}")
