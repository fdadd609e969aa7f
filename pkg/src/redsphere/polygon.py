"""Spherically convex polygons and the reducedness criterion.

A polygon here is a counterclockwise list of unit vertices, strictly
convex, contained in an open hemisphere.  A convex odd-gon is *reduced*
when the projection of every vertex onto the great circle of its opposite
side lands in the relative interior of that side and all these
vertex-to-opposite-side distances agree; the common value is the
polygon's thickness (minimal width over containing lunes).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import formulas
from .errors import (
    CoplanarArcs,
    DegenerateAngle,
    DegenerateArc,
    DomainError,
    NoEnclosingCap,
    NoIntersection,
    NotConvex,
    NotInHemisphere,
    PolygonDocumentError,
)
from .sphere_core import (
    Arc,
    GreatCircle,
    SpherePoint,
    angle_at,
    arc_intersection,
    distance,
    project_to_circle,
)

__all__ = [
    "SphericalPolygon",
    "ReducedWitness",
    "Cap",
    "build_regular",
    "opposite_side",
    "reduced_check",
    "edge_poles",
    "opposite_side_heights",
    "polygon_to_doc",
    "polygon_from_doc",
    "load_polygon",
    "save_polygon",
]

# Feet of the vertex projections must sit strictly inside their side:
# the arc parameter is required to lie in (EDGE_EPS, 1 - EDGE_EPS).
EDGE_EPS = 1e-9
# Default tolerance on the spread of vertex-to-opposite-side distances.
REDUCED_TOL = 1e-7
# Strictness margin for convexity / hemisphere sign tests.
_SIGN_EPS = 1e-12


def opposite_side(i: int, n: int) -> tuple[int, int]:
    """Indices of the side opposite vertex i in an odd n-gon.

    Returns ((i + (n-1)/2) mod n, (i + (n+1)/2) mod n).  Composing the map
    twice through the first index advances by n - 1, i.e. one step back.
    """
    if n % 2 == 0 or n < 3:
        raise DomainError(f"opposite side undefined: n={n!r} is not odd >= 3")
    if not 0 <= i < n:
        raise DomainError(f"vertex index {i!r} outside range(0, {n})")
    return ((i + (n - 1) // 2) % n, (i + (n + 1) // 2) % n)


def edge_poles(V: np.ndarray) -> np.ndarray:
    """Unit poles of the edge great circles v_i -> v_{i+1} (rows)."""
    P = np.cross(V, np.roll(V, -1, axis=0))
    return P / np.linalg.norm(P, axis=1, keepdims=True)


def opposite_side_heights(V: np.ndarray) -> np.ndarray:
    """Signed height of each vertex over its opposite side's great circle.

    V is an (n, 3) array of unit rows in counterclockwise order, n odd.
    Positive on the polygon's interior side.
    """
    n = V.shape[0]
    i = np.arange(n)
    j = (i + (n - 1) // 2) % n
    k = (i + (n + 1) // 2) % n
    P = np.cross(V[j], V[k])
    P /= np.linalg.norm(P, axis=1, keepdims=True)
    return np.arcsin(np.clip(np.einsum("ij,ij->i", V, P), -1.0, 1.0))


class SphericalPolygon:
    """Strictly convex spherical polygon with counterclockwise vertices."""

    def __init__(self, vertices: Sequence[SpherePoint]):
        verts = tuple(vertices)
        if len(verts) < 3:
            raise DomainError(f"need at least 3 vertices, got {len(verts)}")
        V = np.array([p.vec for p in verts])
        n = len(verts)
        for i in range(n):
            if abs(float(V[i] @ V[(i + 1) % n])) >= 1.0 - _SIGN_EPS:
                raise NotConvex(f"vertices {i} and {(i + 1) % n} coincident or antipodal")
        poles = edge_poles(V)
        dots = V @ poles.T  # [vertex j, edge i]
        for i in range(n):
            others = [j for j in range(n) if j not in (i, (i + 1) % n)]
            if not np.all(dots[others, i] > _SIGN_EPS):
                raise NotConvex(
                    "vertex on the wrong side of an edge circle "
                    "(polygon non-convex or ordered clockwise)"
                )
        centroid = V.mean(axis=0)
        norm = float(np.linalg.norm(centroid))
        if norm < _SIGN_EPS or not np.all(V @ (centroid / norm) > _SIGN_EPS):
            raise NotInHemisphere("no open hemisphere contains every vertex")
        self._vertices = verts
        self._array = V

    @property
    def vertices(self) -> tuple[SpherePoint, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def as_array(self) -> np.ndarray:
        return self._array.copy()

    def perimeter(self) -> float:
        V = self._array
        d = np.einsum("ij,ij->i", V, np.roll(V, -1, axis=0))
        return float(np.sum(np.arccos(np.clip(d, -1.0, 1.0))))

    def thickness(self) -> float:
        """Width of the thinnest lune containing the polygon.

        For every edge, the farthest vertex height over the edge's great
        circle is the thickness of the tightest lune with that edge on its
        boundary; the minimum over edges is taken.  That the minimal lune
        is supported by an edge this way is validated against a random
        lune oracle in the test-suite rather than assumed silently.
        """
        V = self._array
        poles = edge_poles(V)
        heights = np.arcsin(np.clip(V @ poles.T, -1.0, 1.0))
        return float(np.min(np.max(heights, axis=0)))

    def diameter(self, reduced_hint: bool = False) -> float:
        """Largest pairwise vertex distance.

        With reduced_hint (odd n only) just the pairs (i, i + (n +- 1)/2)
        are scanned; for reduced polygons the diameter is attained there.
        """
        V = self._array
        n = self.n
        if reduced_hint and n % 2 == 1:
            i = np.arange(n)
            best = -1.0
            for off in ((n - 1) // 2, (n + 1) // 2):
                d = np.einsum("ij,ij->i", V, V[(i + off) % n])
                best = max(best, float(np.max(np.arccos(np.clip(d, -1.0, 1.0)))))
            return best
        G = np.clip(V @ V.T, -1.0, 1.0)
        iu = np.triu_indices(n, k=1)
        return float(np.max(np.arccos(G[iu])))

    def circumcap(self) -> "Cap":
        """Smallest spherical cap containing every vertex.

        Brute force over the O(n^2) two-point caps and O(n^3) three-point
        caps; intended for the small polygons this package works with.
        """
        n = self.n
        if n > 99:
            raise DomainError(f"circumcap supports at most 99 vertices, got {n}")
        V = self._array
        best: Optional[tuple[float, np.ndarray]] = None
        slack = 1e-12

        def consider(center: np.ndarray, radius: float) -> None:
            nonlocal best
            if radius > 0.5 * math.pi + slack:
                return
            cover = float(np.max(np.arccos(np.clip(V @ center, -1.0, 1.0))))
            if cover > radius + slack:
                return
            if best is None or cover < best[0]:
                best = (cover, center)

        for i, j in combinations(range(n), 2):
            m = V[i] + V[j]
            nm = float(np.linalg.norm(m))
            if nm < _SIGN_EPS:
                continue
            center = m / nm
            consider(center, math.acos(max(-1.0, min(1.0, float(center @ V[i])))))
        for i, j, k in combinations(range(n), 3):
            c = np.cross(V[i] - V[j], V[j] - V[k])
            nc = float(np.linalg.norm(c))
            if nc < _SIGN_EPS:
                continue
            for center in (c / nc, -c / nc):
                consider(center, math.acos(max(-1.0, min(1.0, float(center @ V[i])))))
        if best is None:
            raise NoEnclosingCap("no cap of radius <= pi/2 encloses the vertices")
        radius, center = best
        return Cap(center=SpherePoint.from_vec(center), radius=radius)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SphericalPolygon) and self._vertices == other._vertices

    def __repr__(self) -> str:
        return f"SphericalPolygon(n={self.n})"


@dataclass(frozen=True)
class Cap:
    """Closed spherical cap of radius in (0, pi/2]."""

    center: SpherePoint
    radius: float

    def __post_init__(self) -> None:
        if not 0.0 < self.radius <= 0.5 * math.pi:
            raise DomainError(f"cap radius {self.radius!r} outside (0, pi/2]")

    def contains(self, p: SpherePoint, tol: float = 0.0) -> bool:
        return distance(self.center, p) <= self.radius + tol


@dataclass(frozen=True)
class ReducedWitness:
    """Everything reduced_check measures about one polygon.

    Per-vertex records (all empty for even vertex counts, which fail
    immediately): the foot of the projection onto the opposite side's
    great circle, its distance, whether it sits strictly inside the side,
    the spoke crossing point o_i (None when the spokes fail to cross), and
    three angles: at vertex i between the forward edge and the spoke
    (edge_foot_angles), between the spoke and the diagonal to the far
    vertex (foot_diagonal_angles), and the vertical angle at the crossing
    (crossing_angles, NaN when the crossing is missing).
    """

    feet: tuple[SpherePoint, ...]
    foot_distances: tuple[float, ...]
    foot_interior: tuple[bool, ...]
    crossings: tuple[Optional[SpherePoint], ...]
    edge_foot_angles: tuple[float, ...]
    foot_diagonal_angles: tuple[float, ...]
    crossing_angles: tuple[float, ...]
    thickness: float
    is_reduced: bool
    max_residual: float
    reason: Optional[str]


def reduced_check(polygon: SphericalPolygon, tol: float = REDUCED_TOL) -> ReducedWitness:
    """Decide reducedness and collect the per-vertex witness data.

    A polygon passes iff its vertex count is odd, every projection foot is
    strictly interior to its side, and the spread of the
    vertex-to-opposite-side distances stays within tol.
    """
    n = polygon.n
    if n % 2 == 0:
        return ReducedWitness(
            feet=(),
            foot_distances=(),
            foot_interior=(),
            crossings=(),
            edge_foot_angles=(),
            foot_diagonal_angles=(),
            crossing_angles=(),
            thickness=polygon.thickness(),
            is_reduced=False,
            max_residual=math.nan,
            reason=f"not an odd-gon: n={n}",
        )

    verts = polygon.vertices
    feet: list[SpherePoint] = []
    dists: list[float] = []
    interior: list[bool] = []
    for i in range(n):
        j, k = opposite_side(i, n)
        circle = GreatCircle.through(verts[j], verts[k])
        foot = project_to_circle(verts[i], circle)
        feet.append(foot)
        dists.append(distance(verts[i], foot))
        side = Arc(verts[j], verts[k])
        on_segment = side.contains(foot, tol=EDGE_EPS)
        u = side.parameter(foot)
        interior.append(on_segment and EDGE_EPS < u < 1.0 - EDGE_EPS)

    crossings: list[Optional[SpherePoint]] = []
    alphas: list[float] = []
    betas: list[float] = []
    phis: list[float] = []
    for i in range(n):
        k2 = (i + (n + 1) // 2) % n
        alphas.append(angle_at(verts[i], verts[(i + 1) % n], feet[i]))
        betas.append(angle_at(verts[i], feet[i], verts[k2]))
        try:
            o = arc_intersection(Arc(verts[i], feet[i]), Arc(verts[k2], feet[k2]))
            phis.append(angle_at(o, verts[i], feet[k2]))
        except (NoIntersection, CoplanarArcs, DegenerateArc, DegenerateAngle):
            o = None
            phis.append(math.nan)
        crossings.append(o)

    thickness = min(dists)
    spread = max(dists) - thickness
    if not all(interior):
        reason = "projection foot outside the open side interior"
    elif spread > tol:
        reason = f"distance spread {spread:.3e} exceeds tolerance {tol:.1e}"
    else:
        reason = None
    return ReducedWitness(
        feet=tuple(feet),
        foot_distances=tuple(dists),
        foot_interior=tuple(interior),
        crossings=tuple(crossings),
        edge_foot_angles=tuple(alphas),
        foot_diagonal_angles=tuple(betas),
        crossing_angles=tuple(phis),
        thickness=thickness,
        is_reduced=all(interior) and spread <= tol,
        max_residual=spread,
        reason=reason,
    )


def build_regular(n: int, thickness: float) -> SphericalPolygon:
    """Regular reduced n-gon of the given thickness around the north pole.

    Vertices sit at colatitude circumradius, longitudes 2*pi*k/n.
    """
    met = formulas.regular_metrics(n, thickness)
    verts = [
        SpherePoint.from_spherical(met.circumradius, 2.0 * math.pi * k / n)
        for k in range(n)
    ]
    return SphericalPolygon(verts)


# ---------------------------------------------------------------------------
# Polygon JSON documents.


def polygon_to_doc(
    polygon: SphericalPolygon,
    thickness_hint: Optional[float] = None,
    label: Optional[str] = None,
) -> dict:
    """Plain-dict form: {"vertices": [[x, y, z], ...], ...} in full precision."""
    doc: dict = {"vertices": [[p.x, p.y, p.z] for p in polygon.vertices]}
    if thickness_hint is not None:
        doc["thickness_hint"] = thickness_hint
    if label is not None:
        doc["label"] = label
    return doc


def polygon_from_doc(doc: dict) -> SphericalPolygon:
    """Build a polygon from its document form.

    Vertices are renormalized; the load fails when any norm strays from 1
    by more than 1e-6, or on structural junk.  Convexity violations
    propagate as NotConvex.
    """
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise PolygonDocumentError("document must be an object with a 'vertices' key")
    raw = doc["vertices"]
    if not isinstance(raw, list) or len(raw) < 3:
        raise PolygonDocumentError("'vertices' must list at least 3 entries")
    verts = []
    for idx, entry in enumerate(raw):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise PolygonDocumentError(f"vertex {idx} is not an [x, y, z] triple")
        try:
            vec = [float(c) for c in entry]
        except (TypeError, ValueError) as exc:
            raise PolygonDocumentError(f"vertex {idx} has a non-numeric component") from exc
        norm = math.sqrt(sum(c * c for c in vec))
        if abs(norm - 1.0) > 1e-6:
            raise PolygonDocumentError(f"vertex {idx} norm {norm!r} strays from 1 by more than 1e-6")
        verts.append(SpherePoint(*vec))
    return SphericalPolygon(verts)


def load_polygon(path) -> tuple[SphericalPolygon, dict]:
    """Read a polygon JSON file; returns (polygon, document)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise PolygonDocumentError(f"cannot read polygon file {path}: {exc}") from exc
    return polygon_from_doc(doc), doc


def save_polygon(
    path,
    polygon: SphericalPolygon,
    thickness_hint: Optional[float] = None,
    label: Optional[str] = None,
) -> None:
    doc = polygon_to_doc(polygon, thickness_hint=thickness_hint, label=label)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
