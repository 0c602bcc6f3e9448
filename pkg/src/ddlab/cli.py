"""``ddlab`` command line interface.

Exit codes: 0 on success, 1 on bad input or I/O errors, 2 when an exact
invariant fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import concentric, curves, energy, harness, io, r4, suites
from .exact import ExactnessError, Point2, parse_point, parse_rational, phi_inverse

ORACLE_LIMIT = 10**6


class CommandFailed(Exception):
    """An exact invariant did not hold."""


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))


def _exact(args) -> bool:
    return getattr(args, "mode", "exact") == "exact"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=str)


def _parse_pq(text: str) -> tuple[Point2, Point2]:
    parts = [s for s in text.replace(";", ",").replace(" ", "").split(",") if s]
    if len(parts) != 4:
        raise ExactnessError(f"expected p1,p2,q1,q2, got {text!r}")
    c = [parse_rational(s) for s in parts]
    return Point2(c[0], c[1]), Point2(c[2], c[3])


# --- subcommands -------------------------------------------------------------


def cmd_gen(args) -> None:
    seed = args.seed or 0
    if args.kind == "circle":
        params = harness.gen_circle(args.n, seed, args.bound)
        doc = io.points_to_json(harness.circle_points(params))
        doc["params"] = [str(t) for t in params]
    elif args.kind == "concentric":
        cfg = harness.gen_concentric(args.n, args.n2 or args.n, seed, args.bound)
        doc = cfg.to_json()
    else:
        doc = io.points_to_json(harness.gen_generic_plane(args.n, seed, args.kind, args.bound))
    _emit(args, json.dumps(doc, indent=1))


def cmd_distances(args) -> None:
    S, P = io.load_points(args.s, _exact(args)), io.load_points(args.p, _exact(args))
    hist = energy.distance_histogram(S, P)
    if args.format == "csv":
        lines = ["sq_distance,multiplicity"] + [f"{t},{v}" for t, v in sorted(hist.items())]
        _emit(args, "\n".join(lines))
    else:
        _emit(
            args,
            _dump({"size": len(hist), "histogram": {str(t): v for t, v in sorted(hist.items())}}),
        )


def cmd_quadruples(args) -> None:
    S, P = io.load_points(args.s, _exact(args)), io.load_points(args.p, _exact(args))
    q = energy.quadruple_count(S, P)
    report = {
        "delta": len(energy.distance_set(S, P)),
        "q": q,
        "energy_lower_bound": str(energy.energy_lower_bound(S, P)),
    }
    if len(set(P)) == len(P):
        report["q_tilde"] = energy.quadruple_count_offdiag(S, P)
    if all(sum(c * c for c in u) == 1 for u in S):
        report["diagonal"] = energy.diagonal_quadruples(S, P)
    failed = not energy.energy_inequality_holds(S, P)
    if args.check_oracle:
        if (len(S) * len(P)) ** 2 <= ORACLE_LIMIT:
            report["q_brute"] = energy.brute_force_quadruples(S, P)
            failed |= report["q_brute"] != q
        else:
            report["q_brute"] = "skipped: |S|^2|P|^2 above 10^6"
    _emit(args, _dump(report))
    if failed:
        raise CommandFailed("quadruple count disagrees with the brute-force oracle or energy bound")


def cmd_incidence(args) -> None:
    S, P = io.load_points(args.s, True), io.load_points(args.p, True)
    params = [phi_inverse(u) for u in S]
    incidences = curves.incidence_count(params, curves.ordered_pairs(P))
    q_tilde = energy.quadruple_count_offdiag(S, P)
    report = {"incidences": incidences, "q_tilde": q_tilde, "identity_holds": incidences == q_tilde}
    _emit(args, _dump(report))
    if args.check_identity and incidences != q_tilde:
        raise CommandFailed("incidence count differs from the off-diagonal quadruple count")


def cmd_curves(args) -> None:
    if args.action == "build":
        p, q = parse_point(args.p), parse_point(args.q)
        F = curves.build_F(p, q)
        if args.out:
            io.save_poly(args.out, F)
            print(f"total degree {F.total_degree}, {len(F.coeffs)} terms -> {args.out}")
        else:
            print(json.dumps(io.poly_to_json(F)))
    else:
        F, G = io.load_poly(args.f), io.load_poly(args.g)
        shared = curves.common_component_check(F, G, real_only=not args.literal)
        _emit(args, json.dumps({"common_component": shared}))


def _load_flat(path) -> r4.TwoFlat:
    doc = io.read_json(path)
    if isinstance(doc, dict):
        doc = doc.get("hyperplanes", doc)
    if not isinstance(doc, list) or len(doc) != 2:
        raise ExactnessError("flat file must hold exactly two hyperplanes")
    hs = [
        r4.Hyperplane4([parse_rational(c) for c in h["normal"]], parse_rational(h["offset"]))
        for h in doc
    ]
    return r4.TwoFlat(*hs)


def _result_json(res: r4.FlatIntersection) -> dict:
    return {
        "count": "DEGENERATE" if res.degenerate else res.count,
        "witnesses": [
            {"point": [str(c) if w.exact else float(c) for c in w.point], "exact": w.exact}
            for w in res.witnesses
        ],
    }


def cmd_r4(args) -> None:
    if args.action == "pair-intersect":
        (p, q), (p2, q2) = _parse_pq(args.pq), _parse_pq(args.pq2)
        res = r4.curve_pair_intersection(p, q, p2, q2)
        _emit(args, str(res) if not args.json else _dump(_result_json(res)))
    elif args.action == "flat-intersect":
        p, q = _parse_pq(args.pq)
        res = r4.intersect_with_2flat(p, q, _load_flat(args.flat))
        _emit(args, str(res) if not args.json else _dump(_result_json(res)))
    else:
        seed = args.seed or 0
        summaries = [
            suites.summarize("2-flat", suites.flat_suite(args.trials, seed)),
            suites.summarize("curve-pair", suites.pair_suite(args.trials, seed + 1)),
            suites.summarize("scalar-multiple", suites.scalar_multiple_suite(args.trials, seed + 2), 0),
        ]
        lines = [
            f"{s.name}: trials={s.trials} max_count={s.max_count} degenerate={s.degenerate} "
            f"failures={len(s.failures)} {'PASS' if s.ok else 'FAIL'}"
            for s in summaries
        ]
        _emit(args, "\n".join(lines))
        if not all(s.ok for s in summaries):
            raise CommandFailed("intersection bound violated")


def cmd_concentric(args) -> None:
    if args.action == "report":
        cfg = concentric.ConcentricConfig.from_json(io.read_json(args.cfg), _exact(args))
        rep = concentric.concentric_distance_bound(cfg)
        _emit(args, _dump(rep.to_json()))
        if not rep.chain_ok:
            raise CommandFailed("distance chain inequality failed")
    else:
        S, P = concentric.even_spaced_counterexample(args.n, args.scale)
        distinct = concentric.approx_distinct_sq_distances(S, P)
        _emit(
            args,
            _dump(
                {
                    "mode": "approximate",
                    "rel_tol": concentric.APPROX_REL_TOL,
                    "n": args.n,
                    "scale": args.scale,
                    "distinct_distances": distinct,
                    "at_most_n": distinct <= args.n,
                }
            ),
        )


def cmd_experiment(args) -> None:
    if getattr(args, "config", None):
        cfg = harness.ExperimentConfig.load(args.config)
    else:
        cfg = harness.ExperimentConfig(
            generator=args.generator,
            s_sizes=args.sizes,
            p_sizes=args.p_sizes,
            epsilon=args.epsilon,
        )
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "out", None):
        cfg.out = args.out
    try:
        rows = harness.bound_report(cfg)
    except harness.InvariantError as exc:
        raise CommandFailed(str(exc)) from exc
    text = harness.bound_csv(rows)
    if cfg.out:
        harness.save_bound_csv(rows, cfg.out)
    else:
        sys.stdout.write(text)


# --- parser ------------------------------------------------------------------


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=default)
    parser.add_argument(
        "--mode", choices=("exact", "approx"), default=argparse.SUPPRESS if suppress else "exact"
    )
    parser.add_argument("--out", default=default, help="write output to this file")
    parser.add_argument("--config", default=default, help="experiment configuration JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddlab", description="Exact experiments on distances between a circle and a point set."
    )
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        p = sub.add_parser(name, **kw)
        _global_options(p, suppress=True)
        p.set_defaults(func=func)
        return p

    g = add("gen", cmd_gen, help="generate point sets")
    g.add_argument("kind", choices=("circle", "concentric") + harness.PLANE_GENERATORS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--n2", type=int, help="size of P for concentric configurations")
    g.add_argument("--bound", type=int, default=harness.DEFAULT_BOUND)

    d = add("distances", cmd_distances, help="distance set and multiplicities")
    d.add_argument("--s", required=True)
    d.add_argument("--p", required=True)
    d.add_argument("--format", choices=("csv", "json"), default="json")

    q = add("quadruples", cmd_quadruples, help="quadruple counts and the energy bound")
    q.add_argument("--s", required=True)
    q.add_argument("--p", required=True)
    q.add_argument("--check-oracle", action="store_true")

    i = add("incidence", cmd_incidence, help="parameter/curve incidences")
    i.add_argument("--s", required=True)
    i.add_argument("--p", required=True)
    i.add_argument("--check-identity", action="store_true")

    c = add("curves", cmd_curves, help="build curves F_{p,q} and test common components")
    csub = c.add_subparsers(dest="action", required=True)
    cb = csub.add_parser("build")
    _global_options(cb, suppress=True)
    cb.add_argument("--p", required=True)
    cb.add_argument("--q", required=True)
    cg = csub.add_parser("gcd")
    _global_options(cg, suppress=True)
    cg.add_argument("--f", required=True)
    cg.add_argument("--g", required=True)
    cg.add_argument("--literal", action="store_true", help="keep the factors 1+x^2, 1+y^2")

    r = add("r4", cmd_r4, help="curves C_{p,q} in R^4")
    rsub = r.add_subparsers(dest="action", required=True)
    rp = rsub.add_parser("pair-intersect")
    _global_options(rp, suppress=True)
    rp.add_argument("--pq", required=True, help="p1,p2,q1,q2")
    rp.add_argument("--pq2", required=True)
    rp.add_argument("--json", action="store_true")
    rf = rsub.add_parser("flat-intersect")
    _global_options(rf, suppress=True)
    rf.add_argument("--pq", required=True)
    rf.add_argument("--flat", required=True)
    rf.add_argument("--json", action="store_true")
    rv = rsub.add_parser("verify")
    _global_options(rv, suppress=True)
    rv.add_argument("--trials", type=int, default=100)

    k = add("concentric", cmd_concentric, help="concentric-circle configurations")
    ksub = k.add_subparsers(dest="action", required=True)
    kr = ksub.add_parser("report")
    _global_options(kr, suppress=True)
    kr.add_argument("--cfg", required=True)
    kc = ksub.add_parser("counterexample")
    _global_options(kc, suppress=True)
    kc.add_argument("--n", type=int, required=True)
    kc.add_argument("--scale", type=float, required=True)

    e = add("experiment", cmd_experiment, help="bound-ratio sweep as CSV")
    e.add_argument("--generator", choices=harness.PLANE_GENERATORS, default="random")
    e.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    e.add_argument("--p-sizes", type=int, nargs="+")
    e.add_argument("--epsilon", type=float, default=0.01)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CommandFailed as exc:
        print(f"ddlab: invariant failed: {exc}", file=sys.stderr)
        return 2
    except (ExactnessError, ValueError, OSError, KeyError) as exc:
        print(f"ddlab: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
