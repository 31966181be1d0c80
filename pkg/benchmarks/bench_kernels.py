"""Time the numba kernels against the numpy fallbacks and check they agree.

    python benchmarks/bench_kernels.py [--triangles 18] [--repeat 3]

Both implementations are imported directly, so the STICKY_SPECTRA_BACKEND
flag does not matter here. The first numba call (compilation or cache
load) is excluded from the timings.
"""

import argparse
import time

import numpy as np

from sticky_spectra.kernels import _numpy
from sticky_spectra.mesh import generate_fan_mesh, random_weights
from sticky_spectra.special import shooting_nodes

try:
    from sticky_spectra.kernels import _numba
except ImportError:  # pragma: no cover
    _numba = None


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def subset_case(n_tri):
    mesh = random_weights(generate_fan_mesh(n_tri), seed=0)
    d = mesh.measure_data
    return (n_tri, d.tri_bulk, d.ie_t0, d.ie_t1, d.ie_w, d.be_t, d.be_w, d.bv_t0, d.bv_t1, d.bv_w)


def hd_case(n, seed=1):
    rng = np.random.default_rng(seed)
    return tuple(rng.uniform(0.1, 2.0, n) for _ in range(4)) + (1.0,)


def shoot_case(n_lam, k=3):
    lams = np.linspace(0.5, 60.0, n_lam)
    nodes = shooting_nodes(lams.max() + k * (k + 1), k)
    return lams, k, True, nodes, np.ones(n_lam), np.zeros(n_lam)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--triangles", type=int, default=18)
    p.add_argument("--hd-size", type=int, default=300)
    p.add_argument("--lambdas", type=int, default=64)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if _numba is None:
        print("numba not available; nothing to compare")
        return 1

    cases = [
        (f"subset_measures_all (T={args.triangles})", "subset_measures_all", subset_case(args.triangles)),
        (f"hd_triple_min (n={args.hd_size})", "hd_triple_min", hd_case(args.hd_size)),
        (f"shoot_radial ({args.lambdas} lambdas)", "shoot_radial", shoot_case(args.lambdas)),
    ]
    print(f"{'kernel':38s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}  max rel diff")
    for label, name, case in cases:
        f_np = getattr(_numpy, name)
        f_nb = getattr(_numba, name)
        f_nb(*case)  # compile / load cache
        t_np, r_np = best_of(lambda: f_np(*case), args.repeat)
        t_nb, r_nb = best_of(lambda: f_nb(*case), args.repeat)
        a = np.concatenate([np.atleast_1d(np.asarray(x, dtype=float)) for x in r_np])
        b = np.concatenate([np.atleast_1d(np.asarray(x, dtype=float)) for x in r_nb])
        diff = np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300))
        print(f"{label:38s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}  {diff:.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
