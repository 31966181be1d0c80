import os
import subprocess
import sys

import numpy as np
import pytest

from sticky_spectra import kernels
from sticky_spectra.kernels import _numpy
from sticky_spectra.mesh import generate_fan_mesh, random_weights
from sticky_spectra.special import shooting_nodes

_numba = pytest.importorskip("sticky_spectra.kernels._numba")


def _measure_args(n):
    mesh = random_weights(generate_fan_mesh(n), seed=4)
    d = mesh.measure_data
    return (n, d.tri_bulk, d.ie_t0, d.ie_t1, d.ie_w, d.be_t, d.be_w, d.bv_t0, d.bv_t1, d.bv_w)


def test_subset_measures_backends_agree():
    args = _measure_args(10)
    for a, b in zip(_numpy.subset_measures_all(*args), _numba.subset_measures_all(*args)):
        np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-16)


def test_hd_triple_min_backends_agree():
    rng = np.random.default_rng(2)
    arrays = [rng.uniform(0.1, 3.0, 60) for _ in range(4)]
    arrays[0][5] = np.inf
    for delta in (0.0, 1.0, 4.0):
        a = _numpy.hd_triple_min(*arrays, delta)
        b = _numba.hd_triple_min(*arrays, delta)
        np.testing.assert_allclose(np.asarray(a, float), np.asarray(b, float), rtol=1e-14)


@pytest.mark.parametrize("hyperbolic", [False, True])
def test_shoot_radial_backends_agree(hyperbolic):
    lams = np.linspace(0.5, 40.0, 7)
    nodes = shooting_nodes(50.0, 2)
    args = (lams, 2, hyperbolic, nodes, np.ones(7), np.zeros(7))
    for a, b in zip(_numpy.shoot_radial(*args), _numba.shoot_radial(*args)):
        np.testing.assert_allclose(a, b, rtol=1e-11)


def test_dispatch_wrapper_casts_inputs():
    args = list(_measure_args(6))
    args[2] = args[2].astype(np.int32)
    out = kernels.subset_measures_all(*args)
    assert out[0].shape == (2 ** 6,)


def test_numpy_backend_flag_selects_fallback():
    env = dict(os.environ, STICKY_SPECTRA_BACKEND="numpy")
    code = (
        "from sticky_spectra import kernels, disk;"
        "assert kernels.BACKEND == 'numpy';"
        "print(repr(disk.neumann_gap('euclidean')))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert float(out.stdout) == pytest.approx(1.8411837813406593 ** 2, rel=1e-11)


def test_invalid_backend_flag_rejected():
    env = dict(os.environ, STICKY_SPECTRA_BACKEND="fortran")
    out = subprocess.run([sys.executable, "-c", "import sticky_spectra"], env=env, capture_output=True, text=True)
    assert out.returncode != 0
    assert "STICKY_SPECTRA_BACKEND" in out.stderr


def test_thread_cap(monkeypatch):
    from sticky_spectra._backend import max_workers

    monkeypatch.setenv("STICKY_SPECTRA_THREADS", "3")
    assert max_workers() == 3
    monkeypatch.setenv("STICKY_SPECTRA_THREADS", "0")
    assert max_workers() == 1
    monkeypatch.setenv("STICKY_SPECTRA_THREADS", "many")
    with pytest.raises(ValueError):
        max_workers()
