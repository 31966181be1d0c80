"""Hot numeric kernels, dispatched to numba or numpy by ``STICKY_SPECTRA_BACKEND``.

``subset_measures_all``
    the four subset measures for every triangle subset encoded as a bitmask.
``hd_triple_min``
    exhaustive minimum of the three-set bulk/boundary functional.
``shoot_radial``
    RK4 integration of the reduced radial equation on a fixed node grid.
"""

import numpy as np

from .._backend import BACKEND
from . import _numpy

if BACKEND == "numba":
    from . import _numba as _impl
else:
    _impl = _numpy


def subset_measures_all(n_tri, tri_bulk, ie_t0, ie_t1, ie_w, be_t, be_w,
                        bv_t0, bv_t1, bv_w):
    ints = [np.ascontiguousarray(a, dtype=np.int64) for a in (ie_t0, ie_t1, be_t, bv_t0, bv_t1)]
    floats = [np.ascontiguousarray(a, dtype=np.float64) for a in (tri_bulk, ie_w, be_w, bv_w)]
    return _impl.subset_measures_all(
        int(n_tri), floats[0], ints[0], ints[1], floats[1], ints[2], floats[2],
        ints[3], ints[4], floats[3],
    )


def hd_triple_min(r_a, r1, r2, r_c, delta):
    arrays = [np.ascontiguousarray(a, dtype=np.float64) for a in (r_a, r1, r2, r_c)]
    return _impl.hd_triple_min(*arrays, float(delta))


def shoot_radial(lams, k, hyperbolic, nodes, u0, du0):
    lams = np.ascontiguousarray(lams, dtype=np.float64)
    u0 = np.ascontiguousarray(np.broadcast_to(u0, lams.shape), dtype=np.float64)
    du0 = np.ascontiguousarray(np.broadcast_to(du0, lams.shape), dtype=np.float64)
    return _impl.shoot_radial(
        lams, int(k), bool(hyperbolic), np.ascontiguousarray(nodes, dtype=np.float64), u0, du0
    )


__all__ = ["BACKEND", "subset_measures_all", "hd_triple_min", "shoot_radial"]
