"""Polygon type, regular construction, reducedness witness, metric oracles."""

import json
import math

import numpy as np
import pytest

from redsphere import (
    DomainError,
    Lune,
    NotConvex,
    NotInHemisphere,
    PolygonDocumentError,
    SamplerConfig,
    SpherePoint,
    SphericalPolygon,
    build_regular,
    diameter_bound,
    distance,
    load_polygon,
    opposite_side,
    polygon_from_doc,
    polygon_to_doc,
    reduced_check,
    regular_metrics,
    sample_reduced,
    save_polygon,
)

QUARTER_PI = 0.25 * math.pi


def _ring(colat, lons):
    return [SpherePoint.from_spherical(colat, lon) for lon in lons]


@pytest.fixture(scope="module")
def pentagon():
    return build_regular(5, QUARTER_PI)


@pytest.fixture(scope="module")
def crooked_heptagon():
    result = sample_reduced(SamplerConfig(n=7, thickness=math.pi / 6, seed=3))
    assert result.converged
    return result.polygon


class TestConstruction:
    def test_too_few_vertices(self):
        with pytest.raises(DomainError):
            SphericalPolygon(_ring(0.4, [0.0, 2.0]))

    def test_clockwise_rejected(self):
        points = _ring(0.4, [0.0, -2.1, 2.1])
        with pytest.raises(NotConvex):
            SphericalPolygon(points)

    def test_reflex_vertex_rejected(self):
        points = _ring(0.5, [0.0, 1.2, 2.4, 3.6, 4.8])
        # Push one vertex toward the centroid far enough to break convexity.
        points[2] = SpherePoint.from_spherical(0.02, 2.4)
        with pytest.raises(NotConvex):
            SphericalPolygon(points)

    def test_accepted_polygons_fit_an_open_hemisphere(self):
        # Near-hemisphere-filling triangle: legal, and the pole witnesses it.
        points = _ring(0.5 * math.pi - 1e-3, [0.0, 2.0 * math.pi / 3, 4.0 * math.pi / 3])
        P = SphericalPolygon(points)
        witness = SpherePoint(0.0, 0.0, 1.0)
        assert all(distance(witness, v) < 0.5 * math.pi for v in P.vertices)

    def test_equality_and_repr(self, pentagon):
        clone = SphericalPolygon(pentagon.vertices)
        assert clone == pentagon
        assert "SphericalPolygon" in repr(pentagon)


class TestOppositeSide:
    def test_triangle(self):
        assert opposite_side(0, 3) == (1, 2)

    def test_pentagon(self):
        assert opposite_side(0, 5) == (2, 3)

    def test_composition_steps_back_one(self):
        for n in (3, 5, 7, 9, 21):
            for i in range(n):
                j, _ = opposite_side(i, n)
                jj, _ = opposite_side(j, n)
                assert jj == (i - 1) % n

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            opposite_side(0, 4)
        with pytest.raises(DomainError):
            opposite_side(5, 5)


class TestBuildRegular:
    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    @pytest.mark.parametrize("omega", [math.pi / 8, math.pi / 6, QUARTER_PI, math.pi / 3])
    def test_measures_match_closed_forms(self, n, omega):
        P = build_regular(n, omega)
        m = regular_metrics(n, omega)
        assert P.thickness() == pytest.approx(omega, abs=1e-9)
        assert P.perimeter() == pytest.approx(m.perimeter, abs=1e-9)
        assert P.circumcap().radius == pytest.approx(m.circumradius, abs=1e-9)

    def test_triangle_distances_equal_thickness(self):
        w = reduced_check(build_regular(3, QUARTER_PI))
        for d in w.foot_distances:
            assert d == pytest.approx(QUARTER_PI, abs=1e-9)

    def test_triangle_diameter_is_side(self):
        P = build_regular(3, QUARTER_PI)
        m = regular_metrics(3, QUARTER_PI)
        assert P.diameter() == pytest.approx(m.side, abs=1e-12)
        assert P.diameter() == pytest.approx(diameter_bound(QUARTER_PI), abs=1e-9)


class TestReducedCheck:
    def test_regular_pentagon_verifies(self):
        w = reduced_check(build_regular(5, math.pi / 6))
        assert w.is_reduced
        for d in w.foot_distances:
            assert d == pytest.approx(math.pi / 6, abs=1e-9)
        assert all(w.foot_interior)

    def test_even_gon_refused(self):
        square = SphericalPolygon(_ring(0.5, [0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi]))
        w = reduced_check(square)
        assert not w.is_reduced
        assert "not an odd-gon" in w.reason
        assert math.isnan(w.max_residual)
        assert w.feet == ()

    def test_pulled_vertex_breaks_distance_equality(self):
        P = build_regular(3, QUARTER_PI)
        verts = list(P.vertices)
        colat = math.acos(verts[0].z) + 0.05
        verts[0] = SpherePoint.from_spherical(colat, math.atan2(verts[0].y, verts[0].x))
        w = reduced_check(SphericalPolygon(verts))
        assert not w.is_reduced
        assert w.max_residual > 1e-7

    def test_sampled_heptagon_verifies(self, crooked_heptagon):
        w = reduced_check(crooked_heptagon)
        assert w.is_reduced
        assert w.max_residual < 1e-7
        assert all(0.0 < phi < 0.5 * math.pi for phi in w.crossing_angles)

    def test_witness_thickness_matches_polygon_thickness(self, crooked_heptagon):
        w = reduced_check(crooked_heptagon)
        assert crooked_heptagon.thickness() == pytest.approx(w.thickness, abs=1e-9)


class TestThickness:
    def test_regular_polygons_measure_their_thickness(self):
        for n in (3, 5, 9):
            for omega in (math.pi / 8, QUARTER_PI, math.pi / 3):
                assert build_regular(n, omega).thickness() == pytest.approx(
                    omega, abs=1e-9)

    def _random_containing_lunes(self, P, count, seed):
        """Candidate thicknesses of random lunes that provably contain P."""
        V = P.as_array()
        edge_poles = np.cross(V, np.roll(V, -1, axis=0))
        edge_poles /= np.linalg.norm(edge_poles, axis=1, keepdims=True)
        rng = np.random.default_rng(seed)
        found = []
        while len(found) < count:
            g = rng.normal(size=(4 * count, 3))
            g /= np.linalg.norm(g, axis=1, keepdims=True)
            valid = g[(V @ g.T).min(axis=0) >= 0.0]
            # Tightest second hemisphere for each g comes from an edge pole.
            dots = np.clip(valid @ edge_poles.T, -1.0, 1.0).min(axis=1)
            found.extend(math.pi - np.arccos(dots))
        return found[:count]

    @pytest.mark.parametrize("case", ["regular", "sampled"])
    def test_no_thinner_lune_among_ten_thousand(self, case, crooked_heptagon):
        P = build_regular(5, QUARTER_PI) if case == "regular" else crooked_heptagon
        computed = P.thickness()
        for cand in self._random_containing_lunes(P, 10_000, seed=2024):
            assert cand >= computed - 1e-6

    def test_thickness_achieved_by_explicit_lune(self, crooked_heptagon):
        for P in (build_regular(5, QUARTER_PI), crooked_heptagon):
            computed = P.thickness()
            V = P.as_array()
            poles = np.cross(V, np.roll(V, -1, axis=0))
            poles /= np.linalg.norm(poles, axis=1, keepdims=True)
            heights = np.arcsin(np.clip(V @ poles.T, -1.0, 1.0))
            j = int(np.argmin(heights.max(axis=0)))
            i = int(np.argmax(heights[:, j]))
            u, v_star = poles[j], V[i]
            d_star = math.asin(float(np.clip(v_star @ u, -1.0, 1.0)))
            w = v_star - (v_star @ u) * u
            w /= np.linalg.norm(w)
            h = math.cos(math.pi - d_star) * u + math.sin(math.pi - d_star) * w
            lune = Lune(SpherePoint.from_vec(u), SpherePoint.from_vec(h))
            assert lune.thickness == pytest.approx(computed, abs=1e-12)
            for vert in P.vertices:
                assert lune.contains(vert, tol=1e-12)


class TestPerimeter:
    def test_orthant_triangle(self):
        P = SphericalPolygon([SpherePoint(1, 0, 0), SpherePoint(0, 1, 0),
                              SpherePoint(0, 0, 1)])
        assert P.perimeter() == pytest.approx(1.5 * math.pi, abs=1e-12)

    def test_matches_closed_form(self):
        for n in (3, 7, 21):
            P = build_regular(n, math.pi / 6)
            assert P.perimeter() == pytest.approx(
                regular_metrics(n, math.pi / 6).perimeter, abs=1e-12)


class TestDiameter:
    def test_restricted_scan_agrees_with_full_scan(self, crooked_heptagon):
        assert abs(crooked_heptagon.diameter(reduced_hint=True)
                   - crooked_heptagon.diameter()) <= 1e-12

    def test_triangle_all_pairs_equal(self):
        P = build_regular(3, math.pi / 3)
        assert P.diameter() == pytest.approx(P.diameter(reduced_hint=True), abs=1e-12)


class TestCircumcap:
    def test_regular_cap_is_vertex_colatitude(self, pentagon):
        cap = pentagon.circumcap()
        m = regular_metrics(5, QUARTER_PI)
        assert cap.radius == pytest.approx(m.circumradius, abs=1e-12)
        assert distance(cap.center, SpherePoint(0, 0, 1)) < 1e-6

    def test_pair_determined_cap(self):
        far = _ring(0.5, [0.0, math.pi])
        near_pole = SpherePoint.from_spherical(0.05, 0.5 * math.pi)
        P = SphericalPolygon([far[0], near_pole, far[1]])
        cap = P.circumcap()
        assert cap.radius == pytest.approx(0.5, abs=1e-12)
        assert distance(cap.center, SpherePoint(0, 0, 1)) < 1e-12

    def test_no_center_beats_computed_radius(self, crooked_heptagon):
        cap = crooked_heptagon.circumcap()
        V = crooked_heptagon.as_array()
        for v in crooked_heptagon.vertices:
            assert distance(cap.center, v) <= cap.radius + 1e-12
        rng = np.random.default_rng(31)
        centers = cap.center.vec + 0.3 * rng.normal(size=(10_000, 3))
        centers /= np.linalg.norm(centers, axis=1, keepdims=True)
        radii = np.arccos(np.clip(centers @ V.T, -1.0, 1.0)).max(axis=1)
        assert float(radii.min()) >= cap.radius - 1e-5

    def test_cap_membership(self, pentagon):
        cap = pentagon.circumcap()
        assert cap.contains(SpherePoint(0, 0, 1))
        assert not cap.contains(SpherePoint(1, 0, 0))


class TestPolygonDocuments:
    def test_round_trip(self, tmp_path, pentagon):
        path = tmp_path / "p.json"
        save_polygon(path, pentagon, thickness_hint=QUARTER_PI, label="pentagon")
        loaded, doc = load_polygon(path)
        assert doc["thickness_hint"] == QUARTER_PI
        assert doc["label"] == "pentagon"
        for got, want in zip(loaded.vertices, pentagon.vertices):
            assert distance(got, want) < 1e-15

    def test_doc_round_trip_in_memory(self, pentagon):
        again = polygon_from_doc(polygon_to_doc(pentagon))
        assert again.n == pentagon.n

    def test_norm_drift_rejected(self, tmp_path, pentagon):
        doc = polygon_to_doc(pentagon)
        doc["vertices"][0] = [0.9 * c for c in doc["vertices"][0]]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(PolygonDocumentError):
            load_polygon(path)

    def test_structural_garbage_rejected(self):
        with pytest.raises(PolygonDocumentError):
            polygon_from_doc({"nope": []})
        with pytest.raises(PolygonDocumentError):
            polygon_from_doc({"vertices": [[1.0, 0.0], [0.0, 1.0], [0.5, 0.5]]})

    def test_clockwise_document_rejected(self, pentagon):
        doc = polygon_to_doc(pentagon)
        doc["vertices"] = doc["vertices"][::-1]
        with pytest.raises(NotConvex):
            polygon_from_doc(doc)
