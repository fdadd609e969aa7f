"""Command-line front end.

Exit codes: 0 all requested claims hold, 1 a claim failed, 2 usage error,
3 unreadable or structurally invalid input file.  Stdout carries values
rounded to 9 significant digits; files written via --out/--report keep
full precision.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from .errors import RedsphereError
from .polygon import SphericalPolygon, build_regular, load_polygon, reduced_check, save_polygon
from .formulas import regular_metrics
from .sampler import SamplerConfig, sample_batch
from .verify import (
    OMEGA_GRID,
    TABLE1_REFERENCE,
    full_suite,
    polygon_reports,
    reports_to_csv,
    reports_to_json,
    reproduce_table1,
    summarize,
)

__all__ = ["main"]


def _fmt9(x: float) -> float:
    return float(f"{x:.9g}")


def _odd_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"n must be an integer, got {text!r}")
    if value % 2 == 0:
        raise argparse.ArgumentTypeError("n must be odd")
    if value < 3:
        raise argparse.ArgumentTypeError("n must be >= 3")
    return value


def _thickness(text: str) -> float:
    """Parse 'pi/<k>' or a decimal; must land strictly inside (0, pi/2)."""
    s = text.strip().lower()
    try:
        if s.startswith("pi/"):
            value = math.pi / float(s[3:])
        elif s == "pi":
            value = math.pi
        else:
            value = float(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse thickness {text!r}")
    if not 0.0 < value < 0.5 * math.pi:
        raise argparse.ArgumentTypeError(
            f"thickness must be in (0, pi/2), got {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("count must be >= 1")
    return value


def _grid_size(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 100:
        raise argparse.ArgumentTypeError("grid must be >= 100")
    return value


def _lambda_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse lambda list {text!r}")
    if not values or any(v <= 0.0 for v in values):
        raise argparse.ArgumentTypeError("lambdas must be positive numbers")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="redsphere",
        description="Construct, verify and measure reduced spherical polygons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("regular", help="build a regular odd-gon of given thickness")
    p.add_argument("--n", type=_odd_int, required=True)
    p.add_argument("--thickness", type=_thickness, required=True)
    p.add_argument("--out", default=None, help="write the polygon as JSON")

    p = sub.add_parser("metrics", help="measure a polygon stored as JSON")
    p.add_argument("--in", dest="path", required=True)

    p = sub.add_parser("verify", help="check reducedness and every claim")
    p.add_argument("--in", dest="path", required=True)
    p.add_argument("--tol", type=float, default=1e-7)

    p = sub.add_parser("table1", help="print the covering-radius table")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sample", help="sample perturbed reduced polygons")
    p.add_argument("--n", type=_odd_int, required=True)
    p.add_argument("--thickness", type=_thickness, required=True)
    p.add_argument("--count", type=_positive_int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default=None, help="write the claim reports here")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("lemmas", help="tabulate the scalar maps on a grid")
    p.add_argument("--grid", type=_grid_size, default=1000)
    p.add_argument("--lambdas", type=_lambda_list, default=(0.3, 0.5, 1.0, 2.0, 5.0))

    p = sub.add_parser("suite", help="run the default verification grid")
    p.add_argument("--count", type=_positive_int, default=5)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=1))


def _cmd_regular(args) -> int:
    P = build_regular(args.n, args.thickness)
    m = regular_metrics(args.n, args.thickness)
    if args.out:
        save_polygon(args.out, P, thickness_hint=args.thickness)
    _print_json({
        "n": args.n,
        "thickness": _fmt9(args.thickness),
        "side": _fmt9(m.side),
        "perimeter": _fmt9(m.perimeter),
        "inradius": _fmt9(m.inradius),
        "circumradius": _fmt9(m.circumradius),
        "diameter": _fmt9(P.diameter(reduced_hint=True)),
    })
    return 0


def _cmd_metrics(args) -> int:
    P, _ = load_polygon(args.path)
    witness = reduced_check(P)
    cap = P.circumcap()
    _print_json({
        "n": P.n,
        "thickness": _fmt9(witness.thickness),
        "perimeter": _fmt9(P.perimeter()),
        "diameter": _fmt9(P.diameter()),
        "circumcap_radius": _fmt9(cap.radius),
        "is_reduced": witness.is_reduced,
        "max_residual": _fmt9(witness.max_residual),
    })
    return 0


def _cmd_verify(args) -> int:
    P, _ = load_polygon(args.path)
    witness = reduced_check(P, tol=args.tol)
    payload = {
        "n": P.n,
        "is_reduced": witness.is_reduced,
        "thickness": _fmt9(witness.thickness),
        "max_residual": _fmt9(witness.max_residual),
        "reason": witness.reason,
        "claims": [],
        "all_passed": False,
    }
    if witness.is_reduced:
        reports = polygon_reports(P, witness, witness.thickness, f"n={P.n}")
        payload["claims"] = [
            {
                "claim_id": r.claim_id,
                "passed": r.passed,
                "measured": _fmt9(r.measured),
                "bound": _fmt9(r.bound),
                "residual": _fmt9(r.residual),
            }
            for r in reports
        ]
        payload["all_passed"] = all(r.passed for r in reports)
    _print_json(payload)
    return 0 if witness.is_reduced and payload["all_passed"] else 1


def _cmd_table1(args) -> int:
    rows = reproduce_table1()
    ok = True
    records = []
    for row in rows:
        ref = TABLE1_REFERENCE[row.omega]
        passed = abs(row.radius - ref) <= 1e-5
        ok = ok and passed
        records.append({
            "omega": _fmt9(row.omega),
            "radius": _fmt9(row.radius),
            "paper_value": ref,
            "passed": passed,
        })
    if args.format == "csv":
        print("omega,radius,paper_value,passed")
        for rec in records:
            print(f"{rec['omega']:.9g},{rec['radius']:.9g},"
                  f"{rec['paper_value']:.6f},{rec['passed']}")
    else:
        _print_json(records)
    return 0 if ok else 1


def _cmd_sample(args) -> int:
    cfg = SamplerConfig(n=args.n, thickness=args.thickness, seed=args.seed)
    samples = sample_batch(cfg, args.count)
    reports = full_suite(samples, include_formula_checks=False)
    if args.report:
        text = reports_to_json(reports) if args.format == "json" else reports_to_csv(reports)
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    perim = [r.residual for r in reports if r.claim_id == "perimeter-min"]
    diam = [r.residual for r in reports if r.claim_id == "diameter-bound"]
    _print_json({
        "count": args.count,
        "converged": sum(1 for s in samples if s.converged),
        "min_perimeter_slack": _fmt9(min(perim)) if perim else None,
        "max_diameter_slack": _fmt9(max(diam)) if diam else None,
        "all_passed": all(r.passed for r in reports),
    })
    return 0 if all(r.passed for r in reports) else 1


def _cmd_lemmas(args) -> int:
    from .formulas import arm_from_angle, crossing_angle_inv, arm_length, crossing_angle

    for lam in args.lambdas:
        print(f"# lambda={lam:.9g}")
        print("x,ratio,F,dF,d2F")
        grid = args.grid
        h = 0.5 * math.pi / (grid + 1)
        phis = [h * (i + 1) for i in range(grid)]
        F = [arm_from_angle(p, lam) for p in phis]
        for i, phi in enumerate(phis):
            x = crossing_angle_inv(phi, lam)
            ratio = arm_length(x, lam) / crossing_angle(x, lam)
            dF = (F[i + 1] - F[i - 1]) / (2.0 * h) if 0 < i < grid - 1 else math.nan
            d2F = (F[i + 1] - 2.0 * F[i] + F[i - 1]) / (h * h) if 0 < i < grid - 1 else math.nan
            print(f"{x:.9g},{ratio:.9g},{F[i]:.9g},{dF:.9g},{d2F:.9g}")
    for w in OMEGA_GRID:
        print(f"# thickness={w:.9g}")
        print("k,perimeter")
        for k in range(3, 53, 2):
            print(f"{k},{regular_metrics(k, w).perimeter:.9g}")
    return 0


def _cmd_suite(args) -> int:
    samples = []
    for n in (5, 7):
        for w in (math.pi / 6, math.pi / 4, math.pi / 3):
            cfg = SamplerConfig(n=n, thickness=w, seed=args.seed)
            samples.extend(sample_batch(cfg, args.count))
            # Zero perturbation hits the regular equality cases.
            cfg0 = SamplerConfig(n=n, thickness=w, seed=args.seed,
                                 perturbation_scale=0.0)
            samples.extend(sample_batch(cfg0, 1))
    reports = full_suite(samples)
    ok = all(r.passed for r in reports)
    for claim_id, stats in sorted(summarize(reports).items()):
        status = "pass" if stats["failed"] == 0 else "FAIL"
        print(f"{status} {claim_id}: {stats['passed']}/{stats['count']} "
              f"residual range [{stats['min_residual']:.3g}, {stats['max_residual']:.3g}]")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


_COMMANDS = {
    "regular": _cmd_regular,
    "metrics": _cmd_metrics,
    "verify": _cmd_verify,
    "table1": _cmd_table1,
    "sample": _cmd_sample,
    "lemmas": _cmd_lemmas,
    "suite": _cmd_suite,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except BrokenPipeError:
        return 0
    except (OSError, json.JSONDecodeError, RedsphereError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
