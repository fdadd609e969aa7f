"""Numeric verification of the extremal claims about reduced polygons.

Each check returns a VerificationReport; full_suite strings the formula
checks and the per-sample checks together.  The residual convention is
`measured - bound` throughout, and a claim is flagged as an equality case
when |measured - bound| <= 1e-8.

Claim identifiers (stable strings):
    table1                       covering radius vs six-decimal reference
    regular-perimeter-monotone   regular perimeter decreasing in n
    diameter-bound-gap           coarse bound minus sharp bound > 0
    arm-ratio-decreasing         arm_length/crossing_angle decreasing in x
    arm-of-angle-increasing      arm_from_angle increasing
    arm-of-angle-convex          arm_from_angle convex
    reduced-check                polygon passes the reducedness criterion
    sample-rejected              unconverged sample, recorded and excluded
    thickness-agreement          lune thickness == witness thickness
    thickness-range              thickness <= pi/2
    perimeter-min                perimeter >= regular perimeter
    perimeter-jensen             2*sum arm(phi_i) >= 2n*arm(mean phi)
    perimeter-witness-identity   geometric perimeter == 2*sum arm_length(y_i)
    diameter-bound               diameter <= sharp bound
    diameter-pair-restriction    restricted pair scan == full scan
    circumradius-bound           circumcap radius <= covering bound
    jung-relation                diameter >= 2*arcsin(sqrt(3)/2 sin r)
    angle-sandwich-lower         max foot-diagonal angle <= half angle
    angle-sandwich-upper         min edge-foot angle >= half angle
    congruent-angle-sum          far-vertex angle == alpha + beta
    boundary-arc-equality        |v_i t_k| == |t_i v_k|
    crossing-angle-range         0 < phi_i < pi/2
    crossing-angle-sum           sum phi_i >= pi
    crossing-angle-sum-strict    sum phi_i > pi on non-regular samples
    crossing-angle-sum-regular   sum phi_i == pi on regular samples
    crossing-angles-regular      each phi_i == pi/n on regular samples
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NotConverged, RedsphereError
from .formulas import (
    arm_from_angle,
    arm_length,
    covering_radius_bound,
    crossing_angle,
    diameter_bound,
    diameter_bound_coarse,
    regular_metrics,
    regular_triangle_half_angle,
    x_limit,
)
from .polygon import ReducedWitness, SphericalPolygon, reduced_check
from .sampler import SampleResult
from .sphere_core import angle_at, distance

__all__ = [
    "VerificationReport",
    "Table1Row",
    "OMEGA_GRID",
    "LAMBDA_GRID",
    "TABLE1_REFERENCE",
    "check_perimeter_min",
    "check_regular_monotonicity",
    "check_diameter",
    "check_bound_gap",
    "check_circumradius",
    "check_jung",
    "check_scalar_lemmas",
    "reproduce_table1",
    "table1_reports",
    "polygon_reports",
    "full_suite",
    "summarize",
    "reports_to_json",
    "reports_to_csv",
]

# Thickness grid of the reference table; also the default formula grid.
OMEGA_GRID = (math.pi / 8, math.pi / 6, math.pi / 4, math.pi / 3)
# Six-decimal reference values for the covering radius on that grid.
TABLE1_REFERENCE = {
    math.pi / 8: 0.260304,
    math.pi / 6: 0.345523,
    math.pi / 4: 0.511669,
    math.pi / 3: 0.670020,
}
LAMBDA_GRID = (0.3, 0.5, 1.0, 2.0, 5.0)

TOL_FORMULA = 1e-8
TOL_CAP = 1e-7
TOL_TABLE = 1e-5
EQUALITY_TOL = 1e-8
# Samples whose crossing angles all sit within this spread of pi/n count
# as regular for the strict-excess branch of the angle-sum claim.
REGULAR_PHI_SPREAD = 1e-6


@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    inputs: str
    measured: float
    bound: float
    residual: float
    passed: bool
    tolerance: float
    relation: str  # one of ge, le, eq, gt, lt
    equality: bool

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "inputs": self.inputs,
            "measured": self.measured,
            "bound": self.bound,
            "residual": self.residual,
            "passed": self.passed,
            "tolerance": self.tolerance,
        }


def _report(claim_id: str, inputs: str, measured: float, bound: float,
            tolerance: float, relation: str) -> VerificationReport:
    residual = measured - bound
    if relation == "ge":
        passed = residual >= -tolerance
    elif relation == "le":
        passed = residual <= tolerance
    elif relation == "eq":
        passed = abs(residual) <= tolerance
    elif relation == "gt":
        passed = residual > tolerance
    elif relation == "lt":
        passed = residual < -tolerance
    else:
        raise ValueError(f"unknown relation {relation!r}")
    if math.isnan(residual):
        passed = False
    return VerificationReport(
        claim_id=claim_id,
        inputs=inputs,
        measured=measured,
        bound=bound,
        residual=residual,
        passed=passed,
        tolerance=tolerance,
        relation=relation,
        equality=abs(residual) <= EQUALITY_TOL,
    )


def _require_converged(sample: SampleResult) -> None:
    if not sample.converged or sample.polygon is None or sample.witness is None:
        raise NotConverged(sample.failure_reason or "sample did not converge")


def _sample_tag(sample: SampleResult) -> str:
    c = sample.config
    return f"n={c.n} thickness={c.thickness:.9g} seed={c.seed}"


# ---------------------------------------------------------------------------
# Single-claim checks on one reduced polygon.


def check_perimeter_min(sample: SampleResult) -> VerificationReport:
    """Perimeter of a reduced polygon >= perimeter of the regular one."""
    _require_converged(sample)
    c = sample.config
    assert sample.polygon is not None
    return _perimeter_min(sample.polygon, c.thickness, _sample_tag(sample))


def _perimeter_min(P: SphericalPolygon, thickness: float, tag: str) -> VerificationReport:
    bound = regular_metrics(P.n, thickness).perimeter
    return _report("perimeter-min", tag, P.perimeter(), bound, TOL_FORMULA, "ge")


def check_diameter(sample: SampleResult) -> VerificationReport:
    """Diameter <= sharp bound; the coarse-bound slack is noted in inputs."""
    _require_converged(sample)
    c = sample.config
    assert sample.polygon is not None
    return _diameter(sample.polygon, c.thickness, _sample_tag(sample))


def _diameter(P: SphericalPolygon, thickness: float, tag: str) -> VerificationReport:
    gap = diameter_bound_coarse(thickness) - diameter_bound(thickness)
    tag = f"{tag} coarse_gap={gap:.9g}"
    return _report("diameter-bound", tag, P.diameter(reduced_hint=True),
                   diameter_bound(thickness), TOL_FORMULA, "le")


def check_circumradius(sample: SampleResult) -> VerificationReport:
    """Smallest enclosing cap radius <= the covering bound."""
    _require_converged(sample)
    c = sample.config
    assert sample.polygon is not None
    return _circumradius(sample.polygon, c.thickness, _sample_tag(sample))


def _circumradius(P: SphericalPolygon, thickness: float, tag: str) -> VerificationReport:
    cap = P.circumcap()
    jung = P.diameter(reduced_hint=True) - 2.0 * math.asin(
        min(1.0, 0.5 * math.sqrt(3.0) * math.sin(cap.radius)))
    tag = f"{tag} jung_slack={jung:.9g}"
    return _report("circumradius-bound", tag, cap.radius,
                   covering_radius_bound(thickness), TOL_CAP, "le")


def check_jung(sample: SampleResult) -> VerificationReport:
    """Two-point Jung relation: diameter >= 2 arcsin(sqrt(3)/2 sin r)."""
    _require_converged(sample)
    assert sample.polygon is not None
    return _jung(sample.polygon, _sample_tag(sample))


def _jung(P: SphericalPolygon, tag: str) -> VerificationReport:
    r = P.circumcap().radius
    bound = 2.0 * math.asin(min(1.0, 0.5 * math.sqrt(3.0) * math.sin(r)))
    return _report("jung-relation", tag, P.diameter(reduced_hint=True),
                   bound, TOL_FORMULA, "ge")


def check_bound_gap(thickness: float) -> VerificationReport:
    """The sharp diameter bound undercuts the coarse one by more than 1e-6."""
    gap = diameter_bound_coarse(thickness) - diameter_bound(thickness)
    return _report("diameter-bound-gap", f"thickness={thickness:.9g}", gap, 0.0, 1e-6, "gt")


def check_regular_monotonicity(thickness: float, k_max: int = 51) -> VerificationReport:
    """Regular perimeters strictly decrease over odd n = 3, 5, ..., k_max."""
    if k_max < 5:
        raise ValueError(f"k_max={k_max!r} must be >= 5")
    ks = range(3, k_max + 1, 2)
    perims = [regular_metrics(k, thickness).perimeter for k in ks]
    worst = max(b - a for a, b in zip(perims, perims[1:]))
    return _report("regular-perimeter-monotone",
                   f"thickness={thickness:.9g} k=3..{k_max}", worst, 0.0, 1e-10, "lt")


def check_scalar_lemmas(lambda_grid: Sequence[float] = LAMBDA_GRID,
                        points: int = 1000) -> list[VerificationReport]:
    """Grid monotonicity/convexity of the scalar maps, three claims per lam.

    arm_length/crossing_angle strictly decreasing in x; arm_from_angle
    strictly increasing and strictly convex in the crossing angle.
    """
    if points < 100:
        raise ValueError(f"points={points!r} must be >= 100")
    out = []
    for lam in lambda_grid:
        tag = f"lam={lam:.9g} points={points}"
        xs = x_limit(lam) * np.arange(1, points + 1) / (points + 1)
        ratio = np.array([arm_length(x, lam) / crossing_angle(x, lam) for x in xs])
        out.append(_report("arm-ratio-decreasing", tag, float(np.max(np.diff(ratio))),
                           0.0, 0.0, "lt"))
        phis = 0.5 * math.pi * np.arange(1, points + 1) / (points + 1)
        F = np.array([arm_from_angle(p, lam) for p in phis])
        d1 = np.diff(F)
        out.append(_report("arm-of-angle-increasing", tag, float(np.min(d1)),
                           0.0, 0.0, "gt"))
        out.append(_report("arm-of-angle-convex", tag, float(np.min(np.diff(d1))),
                           0.0, 0.0, "gt"))
    return out


# ---------------------------------------------------------------------------
# Reference covering-radius table.


@dataclass(frozen=True)
class Table1Row:
    omega: float
    radius: float


def reproduce_table1() -> list[Table1Row]:
    return [Table1Row(omega=w, radius=covering_radius_bound(w)) for w in OMEGA_GRID]


def table1_reports() -> list[VerificationReport]:
    return [
        _report("table1", f"thickness={row.omega:.9g}", row.radius,
                TABLE1_REFERENCE[row.omega], TOL_TABLE, "eq")
        for row in reproduce_table1()
    ]


# ---------------------------------------------------------------------------
# Witness invariants of one reduced polygon.


def polygon_reports(P: SphericalPolygon, witness: ReducedWitness,
                    thickness: float, tag: str) -> list[VerificationReport]:
    """All theorem and structure claims for one polygon that passed reduced_check."""
    n = P.n
    g = regular_triangle_half_angle(thickness)
    lam = math.tan(thickness)
    out = [
        _perimeter_min(P, thickness, tag),
        _diameter(P, thickness, tag),
        _circumradius(P, thickness, tag),
        _jung(P, tag),
        _report("thickness-agreement", tag,
                abs(P.thickness() - witness.thickness), 0.0, 1e-9, "le"),
        _report("thickness-range", tag, witness.thickness, 0.5 * math.pi, 1e-10, "le"),
        _report("diameter-pair-restriction", tag,
                abs(P.diameter(reduced_hint=True) - P.diameter()), 0.0, 1e-12, "le"),
        _report("angle-sandwich-lower", tag,
                max(witness.foot_diagonal_angles), g, TOL_FORMULA, "le"),
        _report("angle-sandwich-upper", tag,
                min(witness.edge_foot_angles), g, TOL_FORMULA, "ge"),
    ]

    verts = P.vertices
    cong = 0.0
    arc_eq = 0.0
    for i in range(n):
        k2 = (i + (n + 1) // 2) % n
        far = angle_at(verts[k2], verts[i], witness.feet[i])
        cong = max(cong, abs(far - (witness.edge_foot_angles[i]
                                    + witness.foot_diagonal_angles[i])))
        arc_eq = max(arc_eq, abs(distance(verts[i], witness.feet[k2])
                                 - distance(witness.feet[i], verts[k2])))
    out.append(_report("congruent-angle-sum", tag, cong, 0.0, TOL_FORMULA, "le"))
    out.append(_report("boundary-arc-equality", tag, arc_eq, 0.0, TOL_FORMULA, "le"))

    phis = witness.crossing_angles
    if all(not math.isnan(p) for p in phis) and all(o is not None for o in witness.crossings):
        margin = min(min(phis), 0.5 * math.pi - max(phis))
        out.append(_report("crossing-angle-range", tag, margin, 0.0, 0.0, "gt"))
        total = sum(phis)
        out.append(_report("crossing-angle-sum", tag, total, math.pi, TOL_FORMULA, "ge"))
        if max(abs(p - math.pi / n) for p in phis) <= REGULAR_PHI_SPREAD:
            out.append(_report("crossing-angle-sum-regular", tag, total, math.pi, 1e-9, "eq"))
            out.append(_report("crossing-angles-regular", tag,
                               max(abs(p - math.pi / n) for p in phis), 0.0, 1e-9, "le"))
        else:
            out.append(_report("crossing-angle-sum-strict", tag, total, math.pi, 1e-9, "gt"))
        # Spoke-decomposition identity: geometric perimeter equals twice the
        # summed arms of the crossing parameters y_i = tan|o_i t_i|.
        arms = 0.0
        for o, foot in zip(witness.crossings, witness.feet):
            assert o is not None
            arms += arm_length(math.tan(distance(o, foot)), lam)
        out.append(_report("perimeter-witness-identity", tag,
                           P.perimeter(), 2.0 * arms, TOL_FORMULA, "eq"))
        mean_phi = sum(phis) / n
        out.append(_report("perimeter-jensen", tag,
                           2.0 * sum(arm_from_angle(p, lam) for p in phis),
                           2.0 * n * arm_from_angle(mean_phi, lam), 1e-9, "ge"))
    else:
        out.append(_report("crossing-angle-range", tag, math.nan, 0.0, 0.0, "gt"))
    return out


# ---------------------------------------------------------------------------
# The whole suite.


def full_suite(samples: Sequence[SampleResult],
               include_formula_checks: bool = True) -> list[VerificationReport]:
    """Formula-grid checks plus every per-sample claim.

    Unconverged samples are rejections: recorded as sample-rejected rows
    (always passing, with the reason) and excluded from theorem claims.
    Reducedness of each converged sample is re-derived here, so a corrupted
    polygon fails its reduced-check row and is likewise excluded; no theorem
    check runs on a polygon that did not pass reduced_check.
    """
    reports: list[VerificationReport] = []
    if include_formula_checks:
        reports.extend(table1_reports())
        for w in OMEGA_GRID:
            reports.append(check_regular_monotonicity(w))
            reports.append(check_bound_gap(w))
        reports.extend(check_scalar_lemmas())

    for idx, sample in enumerate(samples):
        tag = f"sample={idx} {_sample_tag(sample)}"
        if not sample.converged or sample.polygon is None:
            reason = sample.failure_reason or "did not converge"
            reports.append(_report("sample-rejected", f"{tag} reason={reason}",
                                   sample.final_residual, 0.0, math.inf, "le"))
            continue
        try:
            witness = reduced_check(sample.polygon)
        except RedsphereError as exc:
            reports.append(_report("reduced-check", f"{tag} reason={exc}",
                                   math.inf, 0.0, 1e-7, "le"))
            continue
        if not witness.is_reduced:
            reason = witness.reason or "distance spread over tolerance"
            measured = witness.max_residual if all(witness.foot_interior) else math.inf
            reports.append(_report("reduced-check", f"{tag} reason={reason}",
                                   measured, 0.0, 1e-7, "le"))
            continue
        reports.append(_report("reduced-check", tag, witness.max_residual, 0.0, 1e-7, "le"))
        reports.extend(polygon_reports(sample.polygon, witness,
                                       sample.config.thickness, tag))
    return reports


def summarize(reports: Iterable[VerificationReport]) -> dict[str, dict]:
    """Per-claim counts and worst residuals, keyed by claim id."""
    out: dict[str, dict] = {}
    for r in reports:
        s = out.setdefault(r.claim_id, {
            "count": 0, "passed": 0, "failed": 0,
            "min_residual": math.inf, "max_residual": -math.inf,
        })
        s["count"] += 1
        s["passed" if r.passed else "failed"] += 1
        if not math.isnan(r.residual):
            s["min_residual"] = min(s["min_residual"], r.residual)
            s["max_residual"] = max(s["max_residual"], r.residual)
    return out


def reports_to_json(reports: Sequence[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1)


def reports_to_csv(reports: Sequence[VerificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["claim_id", "inputs", "measured", "bound",
                     "residual", "passed", "tolerance"])
    for r in reports:
        writer.writerow([r.claim_id, r.inputs, repr(r.measured), repr(r.bound),
                         repr(r.residual), r.passed, repr(r.tolerance)])
    return buf.getvalue()
