"""Pure-numpy implementations of the hot kernels.

Same signatures and results as :mod:`sticky_spectra.kernels._numba` up to
floating-point summation order.
"""

import numpy as np

_CHUNK = 1 << 15


def subset_measures_all(n_tri, tri_bulk, ie_t0, ie_t1, ie_w, be_t, be_w,
                        bv_t0, bv_t1, bv_w):
    n_sets = 1 << n_tri
    bulk = np.empty(n_sets)
    cut = np.empty(n_sets)
    arc = np.empty(n_sets)
    ends = np.empty(n_sets)
    shifts = np.arange(n_tri, dtype=np.int64)
    for start in range(0, n_sets, _CHUNK):
        stop = min(start + _CHUNK, n_sets)
        masks = np.arange(start, stop, dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(bool)
        bulk[start:stop] = bits @ tri_bulk
        cut[start:stop] = (bits[:, ie_t0] != bits[:, ie_t1]) @ ie_w
        arc[start:stop] = bits[:, be_t] @ be_w
        ends[start:stop] = (bits[:, bv_t0] != bits[:, bv_t1]) @ bv_w
    return bulk, cut, arc, ends


def hd_triple_min(r_a, r1, r2, r_c, delta):
    best = np.inf
    arg = (-1, -1, -1)
    for j in range(r1.shape[0]):
        vals = np.add.outer(r_a * r1[j], delta * r2[j] * r_c)
        flat = int(np.argmin(vals))
        if vals.flat[flat] < best:
            best = float(vals.flat[flat])
            i, l = divmod(flat, r_c.shape[0])
            arg = (i, j, l)
    return best, arg[0], arg[1], arg[2]


def shoot_radial(lams, k, hyperbolic, nodes, u0, du0):
    n = 2.0 * k + 1.0
    m = lams + (k * (k + 1.0) if hyperbolic else 0.0)
    v = np.array(du0, dtype=float)
    u = np.array(u0, dtype=float)

    def coef(r):
        return 1.0 / np.tanh(r) if hyperbolic else 1.0 / r

    for i in range(nodes.shape[0] - 1):
        r = nodes[i]
        h = nodes[i + 1] - r
        c0 = coef(r)
        cm = coef(r + 0.5 * h)
        c1 = coef(r + h)
        k1u = v
        k1v = -n * c0 * v - m * u
        k2u = v + 0.5 * h * k1v
        k2v = -n * cm * k2u - m * (u + 0.5 * h * k1u)
        k3u = v + 0.5 * h * k2v
        k3v = -n * cm * k3u - m * (u + 0.5 * h * k2u)
        k4u = v + h * k3v
        k4v = -n * c1 * k4u - m * (u + h * k3u)
        u = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return u, v
