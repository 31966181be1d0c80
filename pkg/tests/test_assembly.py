import math

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given
from hypothesis import strategies as st
from scipy.io import mmread

from oracles import quadrature_energy_and_mass
from sticky_spectra.assembly import (
    AssemblyError,
    ProblemKind,
    assemble_boundary_mass,
    assemble_boundary_stiffness,
    assemble_bulk_mass,
    assemble_bulk_stiffness,
    assemble_problem,
    export_matrix_market,
)
from sticky_spectra.eigensolver import rayleigh_quotient, solve_generalized
from sticky_spectra.mesh import (
    constant_weights,
    generate_disk_mesh,
    generate_fan_mesh,
    mesh_from_triangles,
    normalize_weights,
    random_weights,
)


@pytest.mark.parametrize("geometry", ["euclidean", "hyperbolic"])
@pytest.mark.parametrize("delta", [0.0, 1.0, 3.5])
def test_rayleigh_quotient_matches_quadrature(geometry, delta):
    mesh = random_weights(generate_disk_mesh(2, geometry), seed=7)
    problem = assemble_problem(mesh, ProblemKind.sticky_diffusion(delta))
    rng = np.random.default_rng(1)
    for _ in range(3):
        u = rng.standard_normal(mesh.n_vertices)
        e, m = quadrature_energy_and_mass(mesh, u, delta)
        assert rayleigh_quotient(problem, u) == pytest.approx(e / m, rel=1e-10)


def test_reference_triangle_element():
    m = mesh_from_triangles([[0, 0], [1, 0], [0, 1.0]], [(0, 1, 2)])
    K = assemble_bulk_stiffness(m).toarray()
    np.testing.assert_allclose(K, [[1, -0.5, -0.5], [-0.5, 0.5, 0], [-0.5, 0, 0.5]], atol=1e-15)
    M = assemble_bulk_mass(m).toarray()
    np.testing.assert_allclose(M, (np.ones((3, 3)) + np.eye(3)) / 24.0, atol=1e-15)


def test_stiffness_annihilates_constants(disk_l3):
    K = assemble_bulk_stiffness(disk_l3)
    np.testing.assert_allclose(K @ np.ones(disk_l3.n_vertices), 0.0, atol=1e-12)
    Kb = assemble_boundary_stiffness(disk_l3)
    np.testing.assert_allclose(Kb @ np.ones(disk_l3.n_vertices), 0.0, atol=1e-12)


def test_stiffness_linear_in_alpha(disk_l3):
    K1 = assemble_bulk_stiffness(disk_l3)
    K2 = assemble_bulk_stiffness(disk_l3.with_weights(alpha=2 * disk_l3.alpha))
    assert abs(K2 - 2 * K1).max() < 1e-12


@pytest.mark.parametrize("geometry", ["euclidean", "hyperbolic"])
def test_mass_entries_sum_to_measures(geometry):
    m = random_weights(generate_disk_mesh(3, geometry), seed=2)
    assert assemble_bulk_mass(m).sum() == pytest.approx(m.bulk_measure, rel=1e-13)
    assert assemble_boundary_mass(m).sum() == pytest.approx(m.boundary_measure, rel=1e-13)
    assert assemble_bulk_mass(m, lumped=True).sum() == pytest.approx(m.bulk_measure, rel=1e-13)
    assert assemble_boundary_mass(m, lumped=True).sum() == pytest.approx(m.boundary_measure, rel=1e-13)


def test_unit_weight_masses_give_area_and_perimeter():
    m = generate_disk_mesh(5)
    assert assemble_bulk_mass(m).sum() == pytest.approx(math.pi, rel=1e-3)
    assert assemble_boundary_mass(m).sum() == pytest.approx(2 * math.pi, rel=1e-3)


def test_circle_laplacian_first_eigenvalue():
    # boundary stiffness vs boundary mass on the unit circle: eigenvalues k^2
    m = generate_disk_mesh(5)
    bnd = np.sort(m.boundary_vertices)
    A = assemble_boundary_stiffness(m)[bnd][:, bnd]
    B = assemble_boundary_mass(m)[bnd][:, bnd]
    from scipy.linalg import eigh

    lam = eigh(A.toarray(), B.toarray(), eigvals_only=True)
    assert lam[0] == pytest.approx(0.0, abs=1e-10)
    assert lam[1] == pytest.approx(1.0, rel=1e-2)
    assert lam[3] == pytest.approx(4.0, rel=1e-2)


def test_sr_is_srbd_with_zero_delta(fan12_random):
    a = assemble_problem(fan12_random, ProblemKind("sr"))
    b = assemble_problem(fan12_random, ProblemKind.sticky_diffusion(0.0))
    assert a.kind == b.kind
    assert abs(a.stiffness - b.stiffness).max() == 0
    assert abs(a.mass - b.mass).max() == 0


@pytest.mark.parametrize("kind", ["neumann", "dirichlet", "steklov", "sr", "srbd:2"])
def test_matrices_symmetric(disk_l3, kind):
    p = assemble_problem(disk_l3, ProblemKind.parse(kind))
    for mat in (p.stiffness, p.mass):
        dense = mat.toarray() if sp.issparse(mat) else np.asarray(mat)
        np.testing.assert_allclose(dense, dense.T, atol=1e-12)


_MESH = random_weights(generate_disk_mesh(2), seed=11)
_PROBLEMS = {d: assemble_problem(_MESH, ProblemKind.sticky_diffusion(d)) for d in (0.0, 0.5, 2.0)}


@given(st.lists(st.floats(-10, 10), min_size=_MESH.n_vertices, max_size=_MESH.n_vertices))
def test_quadratic_forms_psd_and_monotone_in_delta(values):
    u = np.asarray(values)
    if not u @ (_PROBLEMS[0.0].mass @ u) > 1e-8:
        return
    q = [rayleigh_quotient(_PROBLEMS[d], u) for d in (0.0, 0.5, 2.0)]
    assert q[0] >= -1e-12
    assert q[0] <= q[1] + 1e-12 <= q[2] + 2e-12


@given(st.floats(0.01, 100.0))
def test_joint_weight_scaling_leaves_quotients_unchanged(c):
    m = _MESH.with_weights(_MESH.alpha * c, _MESH.beta * c)
    p = assemble_problem(m, ProblemKind.sticky_diffusion(0.5))
    u = np.linspace(-1, 2, m.n_vertices) ** 2
    assert rayleigh_quotient(p, u) == pytest.approx(rayleigh_quotient(_PROBLEMS[0.5], u), rel=1e-12)


@pytest.mark.parametrize("c1,c2", [(1.0, 1.0), (2.0, 0.5), (0.3, 1.7)])
def test_steklov_constant_weights_ratio(c1, c2):
    m = generate_disk_mesh(5)
    alpha = np.full(m.n_vertices, c1)
    beta = np.zeros(m.n_vertices)
    beta[m.boundary_vertices] = c2
    p = assemble_problem(m.with_weights(alpha, beta), ProblemKind.steklov())
    lam = solve_generalized(p, 3).eigenvalues
    assert lam[0] == pytest.approx(0.0, abs=1e-9)
    assert lam[1] == pytest.approx(c1 / c2, rel=1e-2)


def test_dirichlet_uses_interior_dofs(disk_l3):
    p = assemble_problem(disk_l3, ProblemKind.dirichlet())
    assert p.size == disk_l3.interior_vertices.size
    full = p.to_full(np.ones((p.size, 1)), disk_l3.n_vertices)
    assert np.all(full[disk_l3.boundary_vertices] == 0)


def test_no_interior_vertex_is_an_error():
    m = mesh_from_triangles([[0, 0], [1, 0], [0, 1.0]], [(0, 1, 2)])
    for kind in ("dirichlet", "steklov"):
        with pytest.raises(AssemblyError, match="interior vertex"):
            assemble_problem(m, kind)


def test_problem_kind_parsing():
    assert ProblemKind.parse("srbd:0.5") == ProblemKind.sticky_diffusion(0.5)
    assert ProblemKind.parse("srbd").delta == 1.0
    assert ProblemKind.parse("sr").label == "sr"
    with pytest.raises(ValueError):
        ProblemKind("sr", 1.0)
    with pytest.raises(ValueError):
        ProblemKind("neumann", 1.0)
    with pytest.raises(ValueError):
        ProblemKind("robin")
    with pytest.raises(ValueError):
        ProblemKind.sticky_diffusion(-1.0)


def test_matrix_market_roundtrip(tmp_path, fan12_random):
    p = assemble_problem(fan12_random, ProblemKind.sticky_diffusion(1.0))
    k_path, m_path = export_matrix_market(p, str(tmp_path / "fan"))
    np.testing.assert_allclose(mmread(k_path).toarray(), p.stiffness.toarray(), rtol=1e-14)
    np.testing.assert_allclose(mmread(m_path).toarray(), p.mass.toarray(), rtol=1e-14)


def test_constant_weight_disk_matches_continuum_measure():
    m = constant_weights(generate_disk_mesh(5), 0.5)
    assert m.total_measure == pytest.approx(1.0, rel=1e-13)
    fan = normalize_weights(generate_fan_mesh(6))
    assert fan.total_measure == pytest.approx(1.0)
