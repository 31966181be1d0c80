"""Cheeger-type constants of weighted triangle meshes.

Sets are unions of closed triangles. For a set ``A`` the four measures are
``bulk = |A|_alpha``, ``cut = |d_I A|_alpha``, ``arc = |d_E A|_beta`` and
``ends = |dd_E A|_beta`` (see :func:`sticky_spectra.mesh.subset_measures`).

Ratio functionals::

    HC   cut / bulk
    HJ   cut / arc
    HB   cut / (bulk + arc)
    HE   (cut + delta ends) / (bulk + arc)
    HD   inf over (A, B, C) of
         HC(A) cut(B)/(bulk(B)+arc(B)) + delta ends(B)/(bulk(B)+arc(B)) * ends(C)/arc(C)

Each infimum runs over the sets admissible under a restriction variant:
``bulk <= |Omega|_alpha / 2`` (BULK), ``arc <= |dOmega|_beta / 2``
(BOUNDARY) or ``bulk + arc <= total / 2`` (COMBINED). Sets with a zero
denominator are excluded, as are the empty set and the whole mesh.

Two evaluation routes: exhaustive enumeration of all ``2**T`` subsets for
small meshes, and threshold sets of an eigenfunction (an upper bound).
"""

import enum
import json
import math
import threading
from collections import OrderedDict, namedtuple
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .mesh import TriangleSubset, subset_measures

ENUMERATION_LIMIT = 20
HD_LIMIT = ENUMERATION_LIMIT
TRIPLE_LIMIT = 10
ADMISSIBILITY_RTOL = 1e-12
TIE_RTOL = 1e-12


class CheegerError(ValueError):
    pass


class ConstantKind(enum.Enum):
    HC = "hc"
    HJ = "hj"
    HB = "hb"
    HD = "hd"
    HE = "he"
    HC_BOUNDARY = "hc_boundary"
    HC_TILDE_BULKONLY = "hc_tilde_bulkonly"


class RestrictionVariant(enum.Enum):
    BULK = "bulk"
    BOUNDARY = "boundary"
    COMBINED = "combined"

    @property
    def symbol(self):
        return {"bulk": "h", "boundary": "h~", "combined": "h-"}[self.value]


class Theorem(enum.Enum):
    SR_COMBINED = "sr_combined"
    SR_BULK = "sr_bulk"
    SR_BOUNDARY = "sr_boundary"
    SRBD_D = "srbd_d"
    SRBD_E = "srbd_e"


def _as_kind(kind):
    return kind if isinstance(kind, ConstantKind) else ConstantKind(str(kind).lower())


def _as_variant(variant):
    return variant if isinstance(variant, RestrictionVariant) else RestrictionVariant(str(variant).lower())


@dataclass(frozen=True, eq=False)
class CheegerReport:
    kind: ConstantKind
    variant: RestrictionVariant
    value: float
    witnesses: tuple
    method: str
    delta: float = 1.0
    details: dict = field(default_factory=dict)

    @property
    def admissible(self):
        return math.isfinite(self.value)

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "variant": self.variant.value,
            "delta": self.delta,
            "value": self.value if self.admissible else None,
            "method": self.method,
            "witnesses": [[int(t) for t in w.members] for w in self.witnesses],
            **self.details,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


# --- measures -----------------------------------------------------------

Measures = namedtuple("Measures", "bulk cut arc ends")


def _totals(mesh):
    return mesh.bulk_measure, mesh.boundary_measure


def admissible_mask(mesh, variant, bulk, arc):
    """Elementwise restriction test (relative slack ``ADMISSIBILITY_RTOL``)."""
    variant = _as_variant(variant)
    omega, bnd = _totals(mesh)
    slack = 1.0 + ADMISSIBILITY_RTOL
    if variant is RestrictionVariant.BULK:
        return bulk <= 0.5 * omega * slack
    if variant is RestrictionVariant.BOUNDARY:
        return arc <= 0.5 * bnd * slack
    return bulk + arc <= 0.5 * (omega + bnd) * slack


def _quotient(num, den):
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    out = np.full(np.broadcast(num, den).shape, np.inf)
    ok = den > 0
    np.divide(num, den, out=out, where=ok)
    return out


def _single_ratio(kind, m, delta):
    if kind in (ConstantKind.HC, ConstantKind.HC_TILDE_BULKONLY):
        return _quotient(m.cut, m.bulk)
    if kind is ConstantKind.HJ:
        return _quotient(m.cut, m.arc)
    if kind is ConstantKind.HB:
        return _quotient(m.cut, m.bulk + m.arc)
    if kind is ConstantKind.HE:
        return _quotient(m.cut + delta * m.ends, m.bulk + m.arc)
    if kind is ConstantKind.HC_BOUNDARY:
        return _quotient(m.ends, m.arc)
    raise CheegerError(f"{kind} is not a single-set ratio")


def _hd_value(h_a, r1, r2, h_c, delta):
    """``h_a r1 + delta r2 h_c`` with ``0 * inf = 0``."""
    first = np.where(r1 > 0, h_a * r1, 0.0) if math.isinf(h_a) else h_a * r1
    second = np.where(r2 > 0, h_c * r2, 0.0) if math.isinf(h_c) else h_c * r2
    return first + delta * second


def ratio(kind, sets, delta=1.0):
    """The ratio functional of ``kind`` on one set (three for HD); ``inf`` if a denominator vanishes."""
    kind = _as_kind(kind)
    if isinstance(sets, TriangleSubset):
        sets = (sets,)
    ms = [Measures(*subset_measures(s)) for s in sets]
    if kind is ConstantKind.HD:
        if len(ms) != 3:
            raise CheegerError("HD needs three sets (A, B, C)")
        a, b, c = ms
        h_a = float(_quotient(a.cut, a.bulk))
        h_c = float(_quotient(c.ends, c.arc))
        den = b.bulk + b.arc
        if not den > 0:
            return math.inf
        return float(_hd_value(h_a, b.cut / den, b.ends / den, h_c, delta))
    if len(ms) != 1:
        raise CheegerError(f"{kind.value} takes one set")
    return float(_single_ratio(kind, ms[0], delta))


# --- exhaustive enumeration ---------------------------------------------

_CACHE = OrderedDict()
_CACHE_LOCK = threading.Lock()
_CACHE_SIZE = 4


def enumerate_measures(mesh):
    """Measures of all ``2**T`` triangle subsets, indexed by bitmask (cached per mesh hash)."""
    T = mesh.n_triangles
    if T > ENUMERATION_LIMIT:
        raise CheegerError(
            f"mesh has {T} triangles; exhaustive enumeration is limited to "
            f"{ENUMERATION_LIMIT}, use method='sweep'"
        )
    key = mesh.hash
    with _CACHE_LOCK:
        if key in _CACHE:
            _CACHE.move_to_end(key)
            return _CACHE[key]
    d = mesh.measure_data
    out = Measures(*kernels.subset_measures_all(
        T, d.tri_bulk, d.ie_t0, d.ie_t1, d.ie_w, d.be_t, d.be_w, d.bv_t0, d.bv_t1, d.bv_w
    ))
    for arr in out:
        arr.setflags(write=False)
    with _CACHE_LOCK:
        _CACHE[key] = out
        while len(_CACHE) > _CACHE_SIZE:
            _CACHE.popitem(last=False)
    return out


def _proper(n_sets):
    ok = np.ones(n_sets, dtype=bool)
    ok[0] = False
    ok[-1] = False
    return ok


def _pick(values, bulk, members=None):
    """Index of the minimum; ties broken by smallest bulk, then lexicographic triangle list.

    ``members(i)`` gives the sorted triangle tuple of candidate ``i``;
    by default ``i`` is a bitmask.
    """
    if values.size == 0:
        return None
    best = float(values.min())
    if not math.isfinite(best):
        return None
    tie = np.flatnonzero(values <= best + TIE_RTOL * abs(best))
    if tie.size > 1:
        b = bulk[tie]
        tie = tie[b <= b.min() * (1 + TIE_RTOL)]
    if tie.size > 1:
        key = members or (lambda i: _bits(int(i)))
        return int(min(tie, key=key))
    return int(tie[0])


def _bits(mask):
    return tuple(t for t in range(mask.bit_length()) if (mask >> t) & 1)


def _masked(ratio_values, ok):
    return np.where(ok, ratio_values, np.inf)


def brute_force_constant(mesh, kind, variant=RestrictionVariant.COMBINED, delta=1.0):
    """Exact minimum over all admissible proper triangle subsets."""
    kind = _as_kind(kind)
    variant = _as_variant(variant)
    if kind is ConstantKind.HC_BOUNDARY:
        return boundary_cheeger(mesh)
    if kind is ConstantKind.HC_TILDE_BULKONLY:
        variant = RestrictionVariant.BOUNDARY
    if kind is ConstantKind.HD and mesh.n_triangles > HD_LIMIT:
        raise CheegerError(
            f"HD enumeration is limited to {HD_LIMIT} triangles; use method='sweep'"
        )
    m = enumerate_measures(mesh)
    ok = _proper(m.bulk.size) & admissible_mask(mesh, variant, m.bulk, m.arc)

    def witness(mask):
        return TriangleSubset.from_bits(mesh, int(mask))

    if kind is ConstantKind.HD:
        return _hd_from_measures(mesh, m, ok, ok, ok, variant, delta, witness, "brute-force")
    vals = _masked(_single_ratio(kind, m, delta), ok)
    i = _pick(vals, m.bulk)
    if i is None:
        return CheegerReport(kind, variant, math.inf, (), "brute-force", delta)
    return CheegerReport(kind, variant, float(vals[i]), (witness(i),), "brute-force", delta)


def _hd_from_measures(mesh, m, ok_a, ok_b, ok_c, variant, delta, witness, method, members=None):
    ra = _masked(_quotient(m.cut, m.bulk), ok_a)
    rc = _masked(_quotient(m.ends, m.arc), ok_c)
    ia = _pick(ra, m.bulk, members)
    ic = _pick(rc, m.bulk, members)
    h_a = math.inf if ia is None else float(ra[ia])
    h_c = math.inf if ic is None else float(rc[ic])
    den = m.bulk + m.arc
    r1 = _quotient(m.cut, den)
    r2 = _quotient(m.ends, den)
    ok = ok_b & np.isfinite(r1)
    if ia is None:
        return CheegerReport(ConstantKind.HD, variant, math.inf, (), method, delta)
    vals = _masked(_hd_value(h_a, np.where(ok, r1, 0.0), np.where(ok, r2, 0.0), h_c, delta), ok)
    ib = _pick(vals, m.bulk, members)
    if ib is None:
        return CheegerReport(ConstantKind.HD, variant, math.inf, (), method, delta)
    if ic is None:
        # no admissible C; the C term only vanishes when B has no arc endpoints
        ic = ib
    wit = (witness(ia), witness(ib), witness(ic))
    details = {"h_A": h_a, "h_C_ends": h_c}
    return CheegerReport(ConstantKind.HD, variant, float(vals[ib]), wit, method, delta, details)


def hd_full_enumeration(mesh, variant=RestrictionVariant.COMBINED, delta=1.0):
    """HD by enumerating every admissible triple ``(A, B, C)``; reference for small meshes."""
    variant = _as_variant(variant)
    if mesh.n_triangles > TRIPLE_LIMIT:
        raise CheegerError(f"triple enumeration is limited to {TRIPLE_LIMIT} triangles")
    m = enumerate_measures(mesh)
    ok = _proper(m.bulk.size) & admissible_mask(mesh, variant, m.bulk, m.arc)
    idx = np.flatnonzero(ok)
    ra = _quotient(m.cut[idx], m.bulk[idx])
    den = m.bulk[idx] + m.arc[idx]
    r1 = _quotient(m.cut[idx], den)
    r2 = _quotient(m.ends[idx], den)
    rc = _quotient(m.ends[idx], m.arc[idx])
    sa = np.isfinite(ra)
    sb = np.isfinite(r1)
    sc = np.isfinite(rc)
    if not (sa.any() and sb.any()):
        return CheegerReport(ConstantKind.HD, variant, math.inf, (), "triple-enumeration", delta)
    if not sc.any():
        # C term can only be finite when ends(B) = 0
        sb &= m.ends[idx] == 0
        sc = sb.copy()
        rc = np.zeros_like(rc)
    ia_set, ib_set, ic_set = idx[sa], idx[sb], idx[sc]
    best, i, j, k = kernels.hd_triple_min(ra[sa], r1[sb], r2[sb], rc[sc], delta)
    wit = tuple(TriangleSubset.from_bits(mesh, int(s)) for s in (ia_set[i], ib_set[j], ic_set[k]))
    return CheegerReport(ConstantKind.HD, variant, float(best), wit, "triple-enumeration", delta)


# --- boundary constant ----------------------------------------------------


def boundary_cheeger(mesh):
    """Minimum of ``(beta(p) + beta(q)) / |C|_beta`` over boundary arcs ``C`` from ``p`` to ``q``.

    Arcs are contiguous runs of boundary edges along each loop with
    ``|C|_beta <= |dOmega|_beta / 2``. With several loops a whole loop is
    also a candidate (ratio 0) when it satisfies the restriction. The
    witness is the set of triangles adjacent to the arc.
    """
    d = mesh.measure_data
    total = mesh.boundary_measure
    limit = 0.5 * total * (1 + ADMISSIBILITY_RTOL)
    # candidates compare by (ratio, arc measure); entries (ratio, measure, loop, start, edges)
    best = None
    offset = 0
    for li, loop in enumerate(mesh.boundary_loops):
        n = loop.shape[0]
        w = d.be_w[offset:offset + n]
        beta = mesh.beta[loop]
        if len(mesh.boundary_loops) > 1 and w.sum() <= limit:
            cand = (0.0, float(w.sum()), li, 0, n)
            best = cand if best is None else min(best, cand)
        # arc from vertex i over edges i..i+m-1, ending at vertex i+m
        cw = np.concatenate([[0.0], np.cumsum(np.concatenate([w, w]))])
        i = np.arange(n)[:, None]
        mm = np.arange(1, n)[None, :]
        meas = cw[i + mm] - cw[i]
        ends = beta[i % n] + beta[(i + mm) % n]
        vals = np.where(meas <= limit, _quotient(ends, meas), np.inf)
        flat = int(np.argmin(vals))
        v = float(vals.flat[flat])
        if math.isfinite(v):
            si, sm = divmod(flat, n - 1)
            cand = (v, float(meas[si, sm]), li, si, sm + 1)
            best = cand if best is None else min(best, cand)
        offset += n
    if best is None:
        return CheegerReport(ConstantKind.HC_BOUNDARY, RestrictionVariant.BOUNDARY, math.inf,
                             (), "arc-enumeration", 1.0)
    value, meas, li, start, length = best
    offset = sum(l.shape[0] for l in mesh.boundary_loops[:li])
    n = mesh.boundary_loops[li].shape[0]
    edges = [offset + (start + j) % n for j in range(length)]
    tris = np.unique(d.be_t[edges])
    details = {"loop": li, "arc_start": int(start), "arc_edges": int(length), "arc_measure": meas}
    return CheegerReport(ConstantKind.HC_BOUNDARY, RestrictionVariant.BOUNDARY, value,
                         (TriangleSubset(mesh, tris),), "arc-enumeration", 1.0, details)


# --- threshold-set sweeps -------------------------------------------------


def prefix_measures(mesh, order):
    """Measures of the nested sets ``order[:p]`` for ``p = 0..T``, by difference arrays."""
    T = mesh.n_triangles
    order = np.asarray(order, dtype=np.int64)
    rank = np.empty(T, dtype=np.int64)
    rank[order] = np.arange(T)
    d = mesh.measure_data

    def toggles(t0, t1, w):
        # pair is split for p in (min rank, max rank]
        lo = np.minimum(rank[t0], rank[t1]) + 1
        hi = np.maximum(rank[t0], rank[t1]) + 1
        acc = np.zeros(T + 2)
        np.add.at(acc, lo, w)
        np.add.at(acc, hi, -w)
        return np.cumsum(acc)[: T + 1]

    bulk = np.concatenate([[0.0], np.cumsum(d.tri_bulk[order])])
    arc_acc = np.zeros(T + 1)
    np.add.at(arc_acc, rank[d.be_t] + 1, d.be_w)
    arc = np.cumsum(arc_acc)
    cut = toggles(d.ie_t0, d.ie_t1, d.ie_w)
    ends = toggles(d.bv_t0, d.bv_t1, d.bv_w)
    return Measures(bulk, cut, arc, ends)


def _threshold_prefixes(f_tri, f_vertex):
    """Prefix lengths ``#{f_tri > t}`` over distinct vertex values ``t``, with the descending order."""
    order = np.argsort(-f_tri, kind="stable")
    desc = f_tri[order]
    t = np.unique(f_vertex)
    counts = np.searchsorted(-desc, -t, side="left")
    return order, np.unique(counts)


def sweep_upper_bound(mesh, eigenfunction, kind, variant=RestrictionVariant.COMBINED, delta=1.0):
    """Best ratio over the superlevel sets ``{triangles: mean f > t}`` of ``f`` and ``-f``.

    ``eigenfunction`` is a vertex vector or a ``(n_vertices, m)`` array of
    candidate vectors; all candidates are swept and the best set wins. The
    result bounds the discrete constant from above. If no threshold set is
    admissible the value is ``inf``.
    """
    kind = _as_kind(kind)
    variant = _as_variant(variant)
    if kind is ConstantKind.HC_BOUNDARY:
        return boundary_cheeger(mesh)
    if kind is ConstantKind.HC_TILDE_BULKONLY:
        variant = RestrictionVariant.BOUNDARY
    F = np.asarray(eigenfunction, dtype=float)
    if F.ndim == 1:
        F = F[:, None]
    if F.shape[0] != mesh.n_vertices:
        raise CheegerError(f"eigenfunction has {F.shape[0]} entries, mesh has {mesh.n_vertices} vertices")
    T = mesh.n_triangles
    orders, owner, sizes, parts = [], [], [], []
    for col in range(F.shape[1]):
        for sign in (1.0, -1.0):
            f = sign * F[:, col]
            f_tri = f[mesh.triangles].mean(axis=1)
            order, counts = _threshold_prefixes(f_tri, f)
            counts = counts[(counts > 0) & (counts < T)]
            if counts.size == 0:
                continue
            pm = prefix_measures(mesh, order)
            parts.append(Measures(*(a[counts] for a in pm)))
            owner.append(np.full(counts.size, len(orders)))
            sizes.append(counts)
            orders.append(order)
    method = "sweep"
    if not parts:
        return CheegerReport(kind, variant, math.inf, (), method, delta, {"flag": "no admissible threshold set"})
    m = Measures(*(np.concatenate(x) for x in zip(*parts)))
    owner = np.concatenate(owner)
    sizes = np.concatenate(sizes)
    ok = admissible_mask(mesh, variant, m.bulk, m.arc)

    def members(i):
        return tuple(np.sort(orders[owner[i]][: sizes[i]]).tolist())

    def witness(i):
        return TriangleSubset(mesh, orders[owner[i]][: sizes[i]])

    if kind is ConstantKind.HD:
        rep = _hd_from_measures(mesh, m, ok, ok, ok, variant, delta, witness, method, members)
    else:
        vals = _masked(_single_ratio(kind, m, delta), ok)
        i = _pick(vals, m.bulk, members)
        rep = (CheegerReport(kind, variant, math.inf, (), method, delta) if i is None
               else CheegerReport(kind, variant, float(vals[i]), (witness(i),), method, delta))
    if not rep.admissible:
        return CheegerReport(kind, variant, math.inf, (), method, delta, {"flag": "no admissible threshold set"})
    return rep


def eigen_candidates(vectors, eigenvalues, rtol=1e-6, rotations=180):
    """Sweep candidates from the first nonconstant eigenvectors.

    When ``lambda_1`` is (numerically) multiple, rotations of the
    eigenspace are added so that symmetric witnesses like a half disk are
    reachable from a generic basis.
    """
    vectors = np.asarray(vectors, dtype=float)
    lam = np.asarray(eigenvalues, dtype=float)
    cols = [vectors[:, 1]]
    if lam.size > 2 and abs(lam[2] - lam[1]) <= rtol * abs(lam[1]):
        v1, v2 = vectors[:, 1], vectors[:, 2]
        for th in np.linspace(0.0, np.pi, rotations, endpoint=False)[1:]:
            cols.append(np.cos(th) * v1 + np.sin(th) * v2)
        cols.append(v2)
    return np.column_stack(cols)


# --- tables and bounds ----------------------------------------------------

Relation = namedtuple("Relation", "name lhs relation rhs")


@dataclass(eq=False)
class ConstantTable:
    """Reports keyed by ``(ConstantKind, RestrictionVariant)``."""

    reports: dict
    delta: float
    method: str

    def value(self, kind, variant=RestrictionVariant.COMBINED):
        kind = _as_kind(kind)
        if kind in (ConstantKind.HC_BOUNDARY, ConstantKind.HC_TILDE_BULKONLY):
            variant = RestrictionVariant.BOUNDARY
        return self.reports[(kind, _as_variant(variant))].value

    def relations(self):
        """Comparison relations between the constants, as ``lhs relation rhs`` rows."""
        V = RestrictionVariant
        K = ConstantKind
        g = self.value
        rows = [
            Relation("hC~ <= hC-", g(K.HC, V.BOUNDARY), "<=", g(K.HC, V.COMBINED)),
            Relation("hC- <= hC", g(K.HC, V.COMBINED), "<=", g(K.HC, V.BULK)),
            Relation("hJ <= hJ-", g(K.HJ, V.BULK), "<=", g(K.HJ, V.COMBINED)),
            Relation("hJ- <= hJ~", g(K.HJ, V.COMBINED), "<=", g(K.HJ, V.BOUNDARY)),
            Relation("hB <= hB-", g(K.HB, V.BULK), "<=", g(K.HB, V.COMBINED)),
            Relation("hB~ <= hB-", g(K.HB, V.BOUNDARY), "<=", g(K.HB, V.COMBINED)),
        ]
        for v in V:
            s = v.symbol
            hb, hc, hj = g(K.HB, v), g(K.HC, v), g(K.HJ, v)
            rows += [
                Relation(f"{s}B <= {s}C", hb, "<=", hc),
                Relation(f"{s}B <= {s}J", hb, "<=", hj),
                Relation(f"{s}B >= min({s}C, {s}J)/2", hb, ">=", 0.5 * min(hc, hj)),
            ]
        for k in (K.HC, K.HJ, K.HB):
            for v in V:
                rows.append(Relation(f"{v.symbol}{k.value[1].upper()} > 0", g(k, v), ">", 0.0))
        if (K.HE, V.BOUNDARY) in self.reports:
            rows.append(Relation("hE~ >= hB~", g(K.HE, V.BOUNDARY), ">=", g(K.HB, V.BOUNDARY)))
        if (K.HD, V.COMBINED) in self.reports:
            rows.append(Relation("hD- >= hC- hB-", g(K.HD, V.COMBINED), ">=",
                                 g(K.HC, V.COMBINED) * g(K.HB, V.COMBINED)))
        return rows


def constant_matrix(mesh, delta=1.0, include_hd=None):
    """All constants by enumeration: HC, HJ, HB, HE and HD under each variant, plus the boundary constant.

    HD is included when the mesh is within ``HD_LIMIT`` (or when forced by
    ``include_hd``).
    """
    if include_hd is None:
        include_hd = mesh.n_triangles <= HD_LIMIT
    kinds = [ConstantKind.HC, ConstantKind.HJ, ConstantKind.HB, ConstantKind.HE]
    if include_hd:
        kinds.append(ConstantKind.HD)
    reports = {}
    for k in kinds:
        for v in RestrictionVariant:
            reports[(k, v)] = brute_force_constant(mesh, k, v, delta)
    reports[(ConstantKind.HC_BOUNDARY, RestrictionVariant.BOUNDARY)] = boundary_cheeger(mesh)
    reports[(ConstantKind.HC_TILDE_BULKONLY, RestrictionVariant.BOUNDARY)] = \
        reports[(ConstantKind.HC, RestrictionVariant.BOUNDARY)]
    return ConstantTable(reports, float(delta), "brute-force")


def sweep_matrix(mesh, candidates, delta=1.0):
    """Same layout as :func:`constant_matrix`, from threshold sweeps of ``candidates``."""
    reports = {}
    for k in (ConstantKind.HC, ConstantKind.HJ, ConstantKind.HB, ConstantKind.HE, ConstantKind.HD):
        for v in RestrictionVariant:
            reports[(k, v)] = sweep_upper_bound(mesh, candidates, k, v, delta)
    reports[(ConstantKind.HC_BOUNDARY, RestrictionVariant.BOUNDARY)] = boundary_cheeger(mesh)
    reports[(ConstantKind.HC_TILDE_BULKONLY, RestrictionVariant.BOUNDARY)] = \
        reports[(ConstantKind.HC, RestrictionVariant.BOUNDARY)]
    return ConstantTable(reports, float(delta), "sweep")


LowerBound = namedtuple("LowerBound", "theorem value certified constants")


def bound_from_table(table, theorem, variant=RestrictionVariant.COMBINED):
    """Evaluate a theorem's right-hand side from a :class:`ConstantTable`."""
    theorem = theorem if isinstance(theorem, Theorem) else Theorem(str(theorem).lower())
    K, V = ConstantKind, RestrictionVariant
    g = table.value
    if theorem is Theorem.SR_COMBINED:
        c = {"hB-": g(K.HB, V.COMBINED), "hC-": g(K.HC, V.COMBINED)}
        value = c["hB-"] * c["hC-"] / 4
    elif theorem is Theorem.SR_BULK:
        c = {"hB": g(K.HB, V.BULK), "hC": g(K.HC, V.BULK)}
        value = c["hB"] * c["hC"] / 4
    elif theorem is Theorem.SR_BOUNDARY:
        c = {"hB~": g(K.HB, V.BOUNDARY), "hC~": g(K.HC, V.BOUNDARY)}
        value = c["hB~"] * c["hC~"] / 4
    elif theorem is Theorem.SRBD_D:
        variant = _as_variant(variant)
        name = f"{variant.symbol}D"
        c = {name: g(K.HD, variant)}
        value = c[name] / 4
    else:
        c = {
            "hC~(Omega)": g(K.HC_TILDE_BULKONLY),
            "hC(dOmega)": g(K.HC_BOUNDARY),
            "hE~": g(K.HE, V.BOUNDARY),
        }
        value = min(c["hC~(Omega)"], c["hC(dOmega)"]) * c["hE~"] / 4
    return LowerBound(theorem, float(value), table.method == "brute-force", c)


def lower_bound(mesh, theorem, delta=1.0, method="brute-force", eigenfunction=None,
                variant=RestrictionVariant.COMBINED):
    """Right-hand side of a Cheeger-type lower bound on ``lambda_1``.

    ``method='brute-force'`` gives exact discrete constants (``certified``);
    ``method='sweep'`` uses threshold sets of ``eigenfunction`` (or of the
    sticky-reflection eigenvectors if omitted), which overestimates the
    constants, so the result is flagged as not certified.
    """
    theorem = theorem if isinstance(theorem, Theorem) else Theorem(str(theorem).lower())
    if method == "brute-force":
        table = _table_for(mesh, theorem, delta, variant)
    elif method == "sweep":
        if eigenfunction is None:
            eigenfunction = sr_candidates(mesh)
        table = sweep_matrix(mesh, eigenfunction, delta)
    else:
        raise ValueError(f"unknown method {method!r}")
    return bound_from_table(table, theorem, variant)


def _table_for(mesh, theorem, delta, variant):
    K, V = ConstantKind, RestrictionVariant
    need = {
        Theorem.SR_COMBINED: [(K.HB, V.COMBINED), (K.HC, V.COMBINED)],
        Theorem.SR_BULK: [(K.HB, V.BULK), (K.HC, V.BULK)],
        Theorem.SR_BOUNDARY: [(K.HB, V.BOUNDARY), (K.HC, V.BOUNDARY)],
        Theorem.SRBD_D: [(K.HD, _as_variant(variant))],
        Theorem.SRBD_E: [(K.HC_TILDE_BULKONLY, V.BOUNDARY), (K.HC_BOUNDARY, V.BOUNDARY),
                         (K.HE, V.BOUNDARY)],
    }[theorem]
    reports = {key: brute_force_constant(mesh, key[0], key[1], delta) for key in need}
    return ConstantTable(reports, float(delta), "brute-force")


def sr_candidates(mesh, count=4):
    """Sweep candidates from the sticky-reflection eigenvectors of ``mesh``."""
    from .assembly import ProblemKind, assemble_problem
    from .eigensolver import solve_generalized

    problem = assemble_problem(mesh, ProblemKind.sticky())
    res = solve_generalized(problem, min(count, problem.size))
    return eigen_candidates(res.eigenvectors, res.eigenvalues)
