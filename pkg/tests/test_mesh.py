import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sticky_spectra.mesh import (
    HYPERBOLIC_CHART_RADIUS,
    Metric,
    MeshError,
    TriangleSubset,
    WeightedMesh,
    constant_weights,
    generate_disk_mesh,
    generate_dumbbell_mesh,
    generate_fan_mesh,
    generate_square_disk_mesh,
    half_disk_subset,
    load_mesh,
    mesh_from_dict,
    mesh_from_triangles,
    mesh_to_dict,
    normalize_weights,
    random_weights,
    save_mesh,
    scale_metric,
    subset_measures,
)

HYP_AREA = 2 * math.pi * (math.cosh(1) - 1)
HYP_PERIM = 2 * math.pi * math.sinh(1)


@pytest.mark.parametrize("level", [0, 1, 2, 3])
def test_disk_mesh_structure(level):
    m = generate_disk_mesh(level)
    assert m.n_triangles == 6 * 4 ** level
    assert len(m.boundary_loops) == 1
    assert np.all(m.chart_areas > 0)
    r = np.hypot(*m.vertices[m.boundary_loops[0]].T)
    np.testing.assert_allclose(r, 1.0)


def test_disk_area_and_perimeter_converge():
    m = generate_disk_mesh(5)
    assert m.metric_area == pytest.approx(math.pi, rel=1e-3)
    assert m.metric_perimeter == pytest.approx(2 * math.pi, rel=1e-3)


def test_hyperbolic_ball_area_and_perimeter():
    m = generate_disk_mesh(5, "hyperbolic")
    assert np.max(np.hypot(*m.vertices.T)) == pytest.approx(HYPERBOLIC_CHART_RADIUS)
    assert m.metric_area == pytest.approx(HYP_AREA, rel=1e-2)
    assert m.metric_perimeter == pytest.approx(HYP_PERIM, rel=1e-2)


def test_normalization_sums_to_one():
    m = normalize_weights(generate_disk_mesh(2))
    assert m.total_measure == pytest.approx(1.0, abs=1e-14)
    again = normalize_weights(m)
    np.testing.assert_allclose(again.alpha, m.alpha, rtol=1e-14)


def test_normalization_constant_approaches_continuum():
    # unit weights: c = 1 / (pi + 2 pi) as the mesh refines
    m = normalize_weights(generate_disk_mesh(5))
    assert m.alpha[0] == pytest.approx(1 / (3 * math.pi), rel=2e-3)


@pytest.mark.parametrize("factor", [0.3, 2.0, 17.0])
def test_normalization_invariant_under_joint_weight_scaling(factor):
    base = random_weights(generate_fan_mesh(9), seed=1, normalize=False)
    scaled = base.with_weights(base.alpha * factor, base.beta * factor)
    np.testing.assert_allclose(normalize_weights(scaled).alpha, normalize_weights(base).alpha, rtol=1e-13)


def test_constant_weights_layout(disk_l3):
    m = constant_weights(disk_l3, 0.25, math.pi, 2 * math.pi)
    assert np.all(m.alpha == 0.25 / math.pi)
    assert np.all(m.beta[m.boundary_vertices] == 0.75 / (2 * math.pi))
    assert np.all(m.beta[m.interior_vertices] == 0)


def test_dumbbell_valid_and_neck_limit():
    m = generate_dumbbell_mesh(1.0, 0.2, 1.0, 2)
    assert len(m.boundary_loops) == 1
    assert np.all(m.chart_areas > 0)
    assert generate_dumbbell_mesh(1.0, 0.99, 0.5, 1).n_triangles > 0
    with pytest.raises(MeshError, match="neck_width"):
        generate_dumbbell_mesh(1.0, 1.0, 1.0, 2)


def test_square_disk_mesh_is_small_and_asymmetric():
    m = generate_square_disk_mesh()
    assert m.n_triangles == 15
    left = m.vertices[m.triangles].mean(axis=1)[:, 0] < -1
    right = m.vertices[m.triangles].mean(axis=1)[:, 0] > 0
    assert m.chart_areas[left].sum() == pytest.approx(4.0)
    # inscribed polygon of the disk lobe is smaller than the square
    assert m.chart_areas[right].sum() < 4.0


def test_empty_and_full_subset_measures(fan12_random):
    m = fan12_random
    empty = subset_measures(TriangleSubset(m, []))
    assert empty == (0.0, 0.0, 0.0, 0.0)
    full = subset_measures(TriangleSubset(m, range(m.n_triangles)))
    assert full.bulk == pytest.approx(m.bulk_measure)
    assert full.exterior_arc == pytest.approx(m.boundary_measure)
    assert full.interior_cut == 0.0
    assert full.arc_endpoints == 0.0


def test_half_disk_measures_match_continuum():
    m = generate_disk_mesh(5)
    s = subset_measures(half_disk_subset(m))
    assert s.bulk == pytest.approx(math.pi / 2, rel=2e-3)
    assert s.interior_cut == pytest.approx(2.0, rel=1e-12)
    assert s.exterior_arc == pytest.approx(math.pi, rel=2e-3)
    assert s.arc_endpoints == pytest.approx(2.0)


def test_half_disk_refinement_consistency():
    vals = [subset_measures(half_disk_subset(generate_disk_mesh(L))).bulk for L in (3, 4, 5)]
    errs = [abs(v - math.pi / 2) for v in vals]
    assert errs[0] > errs[1] > errs[2]
    assert abs(vals[1] - vals[2]) / vals[2] < 2e-2


@given(st.integers(min_value=1, max_value=2 ** 12 - 2), st.integers(0, 5))
def test_complement_shares_cut_and_endpoints(bits, seed):
    m = random_weights(generate_fan_mesh(12), seed=seed)
    a = TriangleSubset.from_bits(m, bits)
    sa, sc = subset_measures(a), subset_measures(a.complement())
    assert sa.interior_cut == pytest.approx(sc.interior_cut, abs=1e-15)
    assert sa.arc_endpoints == pytest.approx(sc.arc_endpoints, abs=1e-15)
    assert sa.bulk + sc.bulk == pytest.approx(m.bulk_measure, abs=1e-14)
    assert sa.exterior_arc + sc.exterior_arc == pytest.approx(m.boundary_measure, abs=1e-14)


_FAN = random_weights(generate_fan_mesh(12), seed=3)


@given(st.integers(0, 2 ** 12 - 1), st.integers(0, 2 ** 12 - 1))
def test_bulk_and_arc_additive_on_disjoint_sets(b1, b2):
    b2 &= ~b1
    m = _FAN
    s1 = subset_measures(TriangleSubset.from_bits(m, b1))
    s2 = subset_measures(TriangleSubset.from_bits(m, b2))
    s12 = subset_measures(TriangleSubset.from_bits(m, b1 | b2))
    assert s12.bulk == pytest.approx(s1.bulk + s2.bulk, abs=1e-14)
    assert s12.exterior_arc == pytest.approx(s1.exterior_arc + s2.exterior_arc, abs=1e-14)


@pytest.mark.parametrize("s", [0.5, 2.0, 3.0])
def test_scale_metric_lengths_and_areas(s):
    m = random_weights(generate_fan_mesh(10), seed=2, normalize=False)
    sub = TriangleSubset(m, [0, 1, 2, 5])
    scaled = scale_metric(m, s)
    base, out = subset_measures(sub), subset_measures(TriangleSubset(scaled, sub.members))
    assert out.bulk == pytest.approx(s * s * base.bulk, rel=1e-13)
    assert out.interior_cut == pytest.approx(s * base.interior_cut, rel=1e-13)
    assert out.exterior_arc == pytest.approx(s * base.exterior_arc, rel=1e-13)
    assert out.arc_endpoints == pytest.approx(base.arc_endpoints, rel=1e-13)


def test_scale_metric_preserving_measure():
    m = random_weights(generate_fan_mesh(10), seed=2)
    scaled = scale_metric(m, 2.0, preserve_measure=True)
    assert scaled.bulk_measure == pytest.approx(m.bulk_measure, rel=1e-13)
    assert scaled.boundary_measure == pytest.approx(m.boundary_measure, rel=1e-13)
    with pytest.raises(MeshError):
        scale_metric(m, 0.0)


@pytest.mark.parametrize("geometry", ["euclidean", "hyperbolic"])
def test_json_roundtrip(tmp_path, geometry):
    m = random_weights(generate_disk_mesh(1, geometry), seed=4)
    path = tmp_path / "m.json"
    save_mesh(m, str(path))
    back = load_mesh(str(path))
    assert back.hash == m.hash
    doc = json.loads(path.read_text())
    assert set(doc) == {"vertices", "triangles", "boundary_loops", "alpha", "beta", "metric"}
    assert all(int(k) in set(m.boundary_vertices.tolist()) for k in doc["beta"])


def test_metric_descriptor_roundtrip():
    for metric in (Metric(), Metric("poincare"), Metric("euclidean", 2.0), Metric("poincare", 3.0)):
        assert Metric.from_json(metric.to_json()) == metric
    with pytest.raises(MeshError):
        Metric.from_json({"conformal": "spherical"})


def test_malformed_document_rejected():
    doc = mesh_to_dict(generate_fan_mesh(5))
    del doc["alpha"]
    with pytest.raises(MeshError, match="malformed"):
        mesh_from_dict(doc)


def _square():
    return np.array([[0, 0], [1, 0], [1, 1], [0, 1.0]]), [(0, 1, 2), (0, 2, 3)]


def test_clockwise_input_is_reoriented():
    v, t = _square()
    m = mesh_from_triangles(v, [(0, 2, 1), (0, 3, 2)])
    assert np.all(m.chart_areas > 0)


def test_invalid_meshes():
    v, t = _square()
    good = mesh_from_triangles(v, t)
    with pytest.raises(MeshError, match="triangle 1"):
        WeightedMesh(v, [(0, 1, 2), (0, 3, 2)], good.boundary_loops, good.alpha, good.beta)
    v3 = np.vstack([v, [[0.5, -1.0]]])
    with pytest.raises(MeshError, match="more than two"):
        WeightedMesh(v3, [(0, 1, 2), (0, 2, 3), (0, 4, 2)], good.boundary_loops,
                     np.ones(5), np.append(good.beta, 0.0))
    with pytest.raises(MeshError, match="unit disk"):
        mesh_from_triangles(v * 2, t, metric=Metric("poincare"))
    with pytest.raises(MeshError, match="nonnegative"):
        good.with_weights(alpha=-good.alpha)
    beta = good.beta.copy()
    beta[:] = 0
    with pytest.raises(MeshError, match="beta vanishes"):
        good.with_weights(beta=beta)


def test_interior_beta_rejected():
    m = generate_fan_mesh(6)
    beta = m.beta.copy()
    beta[0] = 1.0
    with pytest.raises(MeshError, match="off the boundary"):
        m.with_weights(beta=beta)


def test_subset_index_validation(fan12):
    with pytest.raises(MeshError):
        TriangleSubset(fan12, [0, 0])
    with pytest.raises(MeshError):
        TriangleSubset(fan12, [12])
