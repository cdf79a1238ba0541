"""Command-line front end.

Exit codes: 0 success, 1 exact-chain violation, 2 budget exceeded,
3 exactness demanded but unavailable.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ._exact import to_fraction
from .covering import bound_pipeline, build_covering, height_bound
from .diophantine import approx_direction, approx_direction_rational_quotients
from .errors import BudgetError, LatticeSegmentsError
from .geometry import Direction, Segment, SphereSpec, radius_from_angle
from .harness import ExperimentConfig, run_verify, write_reports_csv
from .lattice import CountInterval, count_segment, enumerate_sphere, segment_mask, write_points
from .slicing import kappa_estimate, slice, write_histogram_csv

EXIT_OK, EXIT_CHAIN, EXIT_BUDGET, EXIT_INEXACT = 0, 1, 2, 3


def _vector(text: str) -> list[str]:
    return [c for c in text.replace(",", " ").split() if c]


def _direction(args) -> Direction:
    parts = _vector(args.direction)
    looks_int = all(p.lstrip("+-").isdigit() for p in parts)
    if looks_int and not args.real and not args.rational:
        return Direction.rational([int(p) for p in parts])
    mask = {}
    for item in _vector(args.rational or ""):
        i, val = item.split("=")
        mask[int(i)] = to_fraction(val)
    return Direction.real([float(to_fraction(p)) for p in parts], rational=mask)


def _rho(sphere: SphereSpec, rho, theta) -> Fraction:
    if rho is not None:
        return to_fraction(rho)
    return min(Fraction(4 * sphere.n), Fraction(radius_from_angle(sphere, float(theta))))


def _segment(args) -> Segment:
    sphere = SphereSpec(args.d, args.n)
    rho1 = _rho(sphere, args.rho1, args.theta1)
    rho2 = _rho(sphere, args.rho2, args.theta2 if args.theta2 is not None else 0.0)
    return Segment(sphere, _direction(args), rho1, rho2)


def _echo(seg: Segment) -> dict:
    out = {"d": seg.sphere.d, "n": seg.sphere.n, "rho1": str(seg.rho1), "rho2": str(seg.rho2)}
    if seg.direction.is_rational:
        out["direction"] = list(seg.direction.b)
    else:
        out["direction"] = list(seg.direction.v)
        if seg.direction.rational_mask:
            out["rational"] = {str(i): str(v) for i, v in seg.direction.rational_mask.items()}
    return out


def _print_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_enumerate(args) -> int:
    pts = enumerate_sphere(SphereSpec(args.d, args.n), budget=args.budget)
    if args.out:
        with open(args.out, "w") as fh:
            write_points(pts, fh)
    print(len(pts))
    return EXIT_OK


def cmd_count(args) -> int:
    seg = _segment(args)
    pts = enumerate_sphere(seg.sphere, budget=args.budget)
    result = count_segment(seg, pts)
    out = {"segment": _echo(seg)}
    if isinstance(result, CountInterval):
        out["count_interval"] = [result.lo, result.hi]
        out["exact"] = False
    else:
        out["count"] = result
        out["exact"] = seg.direction.is_rational
    _print_json(out)
    if args.exact and isinstance(result, CountInterval):
        return EXIT_INEXACT
    return EXIT_OK


def cmd_slice(args) -> int:
    pts = enumerate_sphere(SphereSpec(args.d, args.n), budget=args.budget)
    hist = slice(pts, [int(c) for c in _vector(args.normal)])
    if args.out:
        with open(args.out, "w") as fh:
            write_histogram_csv([hist], fh)
    else:
        write_histogram_csv([hist], sys.stdout)
    return EXIT_OK


def cmd_kappa(args) -> int:
    pts = enumerate_sphere(SphereSpec(args.d, args.n), budget=args.budget)
    est = kappa_estimate(pts, args.max_norm)
    _print_json({"d": args.d, "n": args.n, "kappa_lower_bound": est.value,
                 "max_normal_norm": est.candidate_bound,
                 "witnesses": [{"normal": list(b), "t": t} for b, t in est.witnesses]})
    return EXIT_OK


def _approx_json(ap) -> dict:
    out = {"a": list(ap.a), "H": ap.H, "q": ap.q, "exponent": ap.exponent, "norm_sq": ap.norm_sq,
           "norm_bound_sq": str(ap.norm_bound_sq), "angle_sq_upper": float(ap.angle_sq_upper),
           "angle_bound_sq": float(ap.angle_bound_sq), "certified": ap.certified}
    if hasattr(ap, "m"):
        out.update({"m": ap.m, "s": ap.s, "q_prime": ap.q_prime,
                    "k_lower": float(ap.k_lower), "k_upper": float(ap.k_upper)})
    return out


def cmd_approx(args) -> int:
    args.real = True
    direction = _direction(args)
    if args.quotients:
        ap = approx_direction_rational_quotients(direction, args.H)
    else:
        ap = approx_direction(direction, args.H)
    _print_json(_approx_json(ap))
    return EXIT_OK


def cmd_cover(args) -> int:
    seg = _segment(args)
    cov = build_covering(seg, [int(c) for c in _vector(args.a)])
    pts = enumerate_sphere(seg.sphere, budget=args.budget)
    in_S = segment_mask(seg, pts, exact=True)
    in_Sp = segment_mask(cov.covering, pts)
    hb = height_bound(cov)
    _print_json({"segment": _echo(seg), "a": list(cov.a),
                 "sin_half_phi_upper": float(cov.sin_half_phi_upper),
                 "rho1_prime": str(cov.rho1_prime), "rho2_prime": str(cov.rho2_prime),
                 "inner_empty": cov.inner_empty, "h_prime": hb.value,
                 "h_prime_upper": float(hb.upper), "count_S": int(in_S.sum()),
                 "count_Sprime": int(in_Sp.sum()), "contained": bool((in_Sp | ~in_S).all())})
    return EXIT_OK if (in_Sp | ~in_S).all() else EXIT_CHAIN


def cmd_verify(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    if args.workers:
        cfg.workers = args.workers
    rows, summary = run_verify(cfg)
    out = args.out or cfg.output
    if out:
        with open(out, "w") as fh:
            write_reports_csv(rows, fh)
    else:
        write_reports_csv(rows, sys.stdout)
    summary_path = args.summary or cfg.summary
    if summary_path:
        with open(summary_path, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        json.dump(summary, sys.stderr, indent=2, sort_keys=True)
        sys.stderr.write("\n")
    bad = [r for r in rows if not r.holds_exact_chain]
    for r in bad:
        print("exact chain violated: " + ",".join(r.to_row()), file=sys.stderr)
    return EXIT_CHAIN if bad else EXIT_OK


def _segment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--direction", required=True, help="integers (exact) or floats, comma separated")
    p.add_argument("--real", action="store_true", help="treat an integer direction as a real vector")
    p.add_argument("--rational", help="exact values of rational coordinates, e.g. '0=1,1=1/2'")
    p.add_argument("--rho1", help="outer squared cap radius, e.g. '50' or '101/2'")
    p.add_argument("--rho2", help="inner squared cap radius")
    p.add_argument("--theta1", type=float, help="outer opening angle (radians)")
    p.add_argument("--theta2", type=float, help="inner opening angle (radians)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lattice-segments",
                                     description="Lattice points in spherical caps and segments.")
    parser.add_argument("--budget", type=int, default=400_000_000,
                        help="enumeration budget in coordinate entries")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list the integer points of a sphere")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-o", "--out", help="write the point-set file here")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="count lattice points in a segment")
    _segment_flags(p)
    p.add_argument("--exact", action="store_true", help="exit 3 unless the count is exact")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("slice", help="histogram of b.x over the sphere's points")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--normal", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("kappa", help="lower bound on points per rational hyperplane")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--max-norm", type=int, default=2)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("approx", help="integer approximation of a direction")
    p.add_argument("--direction", required=True)
    p.add_argument("-H", "--H", type=int, required=True)
    p.add_argument("--rational")
    p.add_argument("--quotients", action="store_true", help="use the declared rational coordinates")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("cover", help="covering segment of integer direction")
    _segment_flags(p)
    p.add_argument("--a", required=True, help="integer covering direction")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="run a bound-verification sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("-o", "--out", help="CSV output (default: config 'output' or stdout)")
    p.add_argument("--summary", help="summary JSON path (default: config 'summary' or stderr)")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("count", "cover") and args.rho1 is None and args.theta1 is None:
        build_parser().error("give --rho1 or --theta1")
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except LatticeSegmentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
