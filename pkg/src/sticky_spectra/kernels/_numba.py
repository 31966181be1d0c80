"""numba-compiled kernels; see :mod:`sticky_spectra.kernels._numpy` for the reference path."""

import math

import numpy as np
from numba import njit, prange


@njit(parallel=True, cache=True, nogil=True)
def subset_measures_all(n_tri, tri_bulk, ie_t0, ie_t1, ie_w, be_t, be_w,
                        bv_t0, bv_t1, bv_w):
    n_sets = 1 << n_tri
    bulk = np.empty(n_sets)
    cut = np.empty(n_sets)
    arc = np.empty(n_sets)
    ends = np.empty(n_sets)
    for mask in prange(n_sets):
        b = 0.0
        for t in range(n_tri):
            if (mask >> t) & 1:
                b += tri_bulk[t]
        c = 0.0
        for e in range(ie_t0.shape[0]):
            if ((mask >> ie_t0[e]) & 1) != ((mask >> ie_t1[e]) & 1):
                c += ie_w[e]
        a = 0.0
        for e in range(be_t.shape[0]):
            if (mask >> be_t[e]) & 1:
                a += be_w[e]
        p = 0.0
        for v in range(bv_t0.shape[0]):
            if ((mask >> bv_t0[v]) & 1) != ((mask >> bv_t1[v]) & 1):
                p += bv_w[v]
        bulk[mask] = b
        cut[mask] = c
        arc[mask] = a
        ends[mask] = p
    return bulk, cut, arc, ends


@njit(cache=True, nogil=True)
def hd_triple_min(r_a, r1, r2, r_c, delta):
    best = np.inf
    ia = -1
    ib = -1
    ic = -1
    for j in range(r1.shape[0]):
        for i in range(r_a.shape[0]):
            first = r_a[i] * r1[j]
            for l in range(r_c.shape[0]):
                val = first + delta * r2[j] * r_c[l]
                if val < best:
                    best = val
                    ia = i
                    ib = j
                    ic = l
    return best, ia, ib, ic


@njit(cache=True, nogil=True)
def _coef(r, hyperbolic):
    if hyperbolic:
        return 1.0 / math.tanh(r)
    return 1.0 / r


@njit(parallel=True, cache=True, nogil=True)
def shoot_radial(lams, k, hyperbolic, nodes, u0, du0):
    n = 2.0 * k + 1.0
    shift = k * (k + 1.0) if hyperbolic else 0.0
    out_u = np.empty(lams.shape[0])
    out_v = np.empty(lams.shape[0])
    for q in prange(lams.shape[0]):
        m = lams[q] + shift
        u = u0[q]
        v = du0[q]
        for i in range(nodes.shape[0] - 1):
            r = nodes[i]
            h = nodes[i + 1] - r
            c0 = _coef(r, hyperbolic)
            cm = _coef(r + 0.5 * h, hyperbolic)
            c1 = _coef(r + h, hyperbolic)
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
        out_u[q] = u
        out_v[q] = v
    return out_u, out_v
