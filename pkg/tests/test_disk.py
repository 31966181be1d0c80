import math

import numpy as np
import pytest

from sticky_spectra.disk import (
    EUCLIDEAN,
    HYPERBOLIC,
    DiskError,
    DiskModel,
    ball_area,
    ball_perimeter,
    bound_curve,
    disk_gap,
    first_root,
    half_ball_cheeger,
    mode_roots,
    neumann_gap,
    secular_value,
)
from sticky_spectra.figures import fem_gap
from sticky_spectra.mesh import generate_disk_mesh

# first zeros, from mpmath: J_1'(x) = 0 and J_1(x) = 0 (the latter is J_0' = 0)
J1_PRIME_FIRST = 1.8411837813406593
J1_FIRST = 3.8317059702075123


def test_euclidean_neumann_gap_is_squared_bessel_derivative_root():
    assert neumann_gap(EUCLIDEAN) == pytest.approx(J1_PRIME_FIRST ** 2, rel=1e-11)


def test_hyperbolic_neumann_gap():
    lam = neumann_gap(HYPERBOLIC)
    assert lam == pytest.approx(2.96, rel=5e-3)
    assert lam < neumann_gap(EUCLIDEAN)


def test_geometry_constants():
    assert ball_area(EUCLIDEAN) == math.pi
    assert ball_perimeter(HYPERBOLIC) == pytest.approx(2 * math.pi * math.sinh(1))
    assert half_ball_cheeger(EUCLIDEAN) == pytest.approx(4 / math.pi)
    assert half_ball_cheeger(EUCLIDEAN) ** 2 / 4 == pytest.approx(0.41, rel=3e-2)
    assert half_ball_cheeger(HYPERBOLIC) ** 2 / 4 == pytest.approx(0.34, rel=3e-2)


def test_model_parameters():
    m = DiskModel(EUCLIDEAN, 5 / 7)
    assert m.gamma == pytest.approx(5.0)
    assert m.alpha == pytest.approx(5 / (7 * math.pi))
    assert m.beta == pytest.approx(1 / (7 * math.pi))
    back = DiskModel.from_weights(EUCLIDEAN, m.alpha, m.beta)
    assert back.alpha_bar == pytest.approx(m.alpha_bar)
    with pytest.raises(ValueError):
        DiskModel.from_weights(EUCLIDEAN, 1.0, 1.0)
    for bad in (0.0, 1.0, -0.2):
        with pytest.raises(ValueError):
            DiskModel(EUCLIDEAN, bad)
    with pytest.raises(ValueError):
        DiskModel(EUCLIDEAN, 0.5, -1.0)
    with pytest.raises(ValueError):
        DiskModel("spherical", 0.5)


@pytest.mark.parametrize("geometry", [EUCLIDEAN, HYPERBOLIC])
@pytest.mark.parametrize("a", [0.2, 0.6])
def test_small_lambda_expansion(geometry, a):
    # mode 0 near lam = 0 has slope -(1 + gamma |Omega|/|dOmega|)
    m = DiskModel(geometry, a)
    lam = 1e-7
    slope = secular_value(m, 0, lam) / lam
    expected = -(1.0 + m.gamma * ball_area(geometry) / ball_perimeter(geometry))
    assert slope == pytest.approx(expected, rel=1e-5)
    if geometry == EUCLIDEAN:
        assert expected == pytest.approx(-(1 + m.gamma / 2))


def test_mode_zero_independent_of_delta():
    lam = np.array([0.5, 4.0, 20.0])
    a = secular_value(DiskModel(EUCLIDEAN, 0.5, 0.0), 0, lam)
    b = secular_value(DiskModel(EUCLIDEAN, 0.5, 7.0), 0, lam)
    np.testing.assert_array_equal(a, b)


def test_large_gamma_mode_zero_approaches_neumann():
    roots = mode_roots(DiskModel(EUCLIDEAN, 1 - 1e-7), k_max=2)
    assert roots[1] == pytest.approx(J1_PRIME_FIRST ** 2, rel=1e-5)
    assert roots[0] == pytest.approx(J1_FIRST ** 2, rel=1e-5)


def test_gap_tends_to_neumann_and_zero():
    assert disk_gap(DiskModel(EUCLIDEAN, 0.999)) == pytest.approx(neumann_gap(EUCLIDEAN), rel=1e-2)
    assert disk_gap(DiskModel(EUCLIDEAN, 1e-3)) < 0.01


def test_gap_increasing_in_alpha_bar():
    vals = [disk_gap(DiskModel(EUCLIDEAN, a)) for a in np.linspace(0.05, 0.95, 10)]
    assert np.all(np.diff(vals) > 0)


@pytest.mark.parametrize("geometry", [EUCLIDEAN, HYPERBOLIC])
def test_gap_above_bound_curve(geometry):
    for a in (0.1, 0.5, 0.9):
        m = DiskModel(geometry, a)
        assert disk_gap(m) > bound_curve(m)


def test_bound_curve_values():
    assert bound_curve(DiskModel(EUCLIDEAN, 0.5)) == pytest.approx(2 / math.pi ** 2)
    assert bound_curve(DiskModel(HYPERBOLIC, 0.5)) == pytest.approx(
        0.5 / (math.pi ** 2 * (math.cosh(1) - 1) ** 2))


def test_delta_sweep_monotone_and_crosses_neumann():
    vals = [disk_gap(DiskModel(EUCLIDEAN, 5 / 7, d)) for d in (0.0, 1.0, 3.0, 5.0, 20.0, 50.0)]
    assert np.all(np.diff(vals) >= 0)
    assert vals[0] < neumann_gap(EUCLIDEAN) < vals[-1]


@pytest.mark.parametrize(
    "geometry,a,delta",
    [(EUCLIDEAN, 0.25, 0.0), (EUCLIDEAN, 0.75, 1.0), (HYPERBOLIC, 0.5, 0.0), (HYPERBOLIC, 0.25, 1.0)],
)
def test_semi_analytic_matches_fem(geometry, a, delta):
    mesh = generate_disk_mesh(5, geometry)
    exact = disk_gap(DiskModel(geometry, a, delta))
    assert fem_gap(geometry, a, delta, mesh=mesh) == pytest.approx(exact, rel=1e-3)


def test_mode_cutoff_too_small():
    with pytest.raises(DiskError, match="cutoff"):
        disk_gap(DiskModel(EUCLIDEAN, 0.9), k_max=1)


def test_secular_value_errors():
    m = DiskModel(EUCLIDEAN, 0.5)
    with pytest.raises(ValueError):
        secular_value(m, 1, 0.0)
    with pytest.raises(ValueError):
        secular_value(m, 1, 2.0e4)


def test_first_root_none_without_sign_change():
    assert first_root(lambda lam: np.ones_like(np.asarray(lam, dtype=float)), x_limit=5.0) is None
