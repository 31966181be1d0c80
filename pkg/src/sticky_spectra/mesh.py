"""Weighted triangulated planar domains.

A :class:`WeightedMesh` carries a P1 bulk density ``alpha`` on all vertices,
a boundary density ``beta`` on boundary vertices (zero elsewhere) and a
conformal metric ``phi * |dx|``. Lengths scale by ``phi`` and areas by
``phi**2``; ``phi`` is evaluated at triangle centroids and edge midpoints.
"""

import hashlib
import json
from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property

import numpy as np

HYPERBOLIC_CHART_RADIUS = float(np.tanh(0.5))
_AREA_EPS = 1e-14


class MeshError(ValueError):
    """Raised when a mesh violates a structural or weight invariant."""


@dataclass(frozen=True)
class Metric:
    """Conformal metric ``scale * phi(x) |dx|``.

    ``kind`` is ``"euclidean"`` (``phi = 1``) or ``"poincare"``
    (``phi = 2 / (1 - |x|^2)``, the Poincare disk chart).
    """

    kind: str = "euclidean"
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("euclidean", "poincare"):
            raise MeshError(f"unknown metric kind {self.kind!r}")
        if not (self.scale > 0 and np.isfinite(self.scale)):
            raise MeshError(f"metric scale must be positive, got {self.scale}")

    def factor(self, points):
        points = np.asarray(points, dtype=float)
        if self.kind == "euclidean":
            return np.full(points.shape[:-1], float(self.scale))
        r2 = np.sum(points * points, axis=-1)
        return self.scale * 2.0 / (1.0 - r2)

    def to_json(self):
        if self.kind == "euclidean" and self.scale == 1.0:
            return "euclidean"
        name = "poincare" if self.kind == "poincare" else "constant"
        out = {"conformal": name}
        if self.scale != 1.0:
            out["scale"] = self.scale
        return out

    @classmethod
    def from_json(cls, obj):
        if obj == "euclidean":
            return cls()
        if isinstance(obj, dict) and "conformal" in obj:
            name = obj["conformal"]
            scale = float(obj.get("scale", 1.0))
            if name == "poincare":
                return cls("poincare", scale)
            if name == "constant":
                return cls("euclidean", scale)
        raise MeshError(f"unrecognised metric descriptor {obj!r}")


MeasureData = namedtuple(
    "MeasureData",
    "tri_bulk ie_t0 ie_t1 ie_w be_t be_w bv_t0 bv_t1 bv_w",
)
MeasureData.__doc__ = """Flat arrays describing a mesh for subset-measure kernels.

tri_bulk: alpha-area per triangle. ie_*: interior edges (two triangles,
alpha-length). be_*: boundary edges (adjacent triangle, beta-length).
bv_*: boundary vertices (triangles of the two incident boundary edges, beta).
"""


def _readonly(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class WeightedMesh:
    """Immutable weighted triangulation with ordered boundary loops."""

    vertices: np.ndarray
    triangles: np.ndarray
    boundary_loops: tuple
    alpha: np.ndarray
    beta: np.ndarray
    metric: Metric = Metric()

    def __post_init__(self):
        object.__setattr__(self, "vertices", _readonly(self.vertices, float).reshape(-1, 2))
        object.__setattr__(self, "triangles", _readonly(self.triangles, np.int64).reshape(-1, 3))
        object.__setattr__(
            self, "boundary_loops", tuple(_readonly(loop, np.int64) for loop in self.boundary_loops)
        )
        object.__setattr__(self, "alpha", _readonly(self.alpha, float))
        object.__setattr__(self, "beta", _readonly(self.beta, float))
        self._validate()

    # -- topology -----------------------------------------------------------

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    @property
    def n_triangles(self):
        return self.triangles.shape[0]

    @cached_property
    def _edge_structure(self):
        tri = self.triangles
        local = tri[:, [[1, 2], [2, 0], [0, 1]]].reshape(-1, 2)
        key = np.sort(local, axis=1)
        edges, inverse, counts = np.unique(key, axis=0, return_inverse=True, return_counts=True)
        inverse = inverse.reshape(-1)
        owner = np.repeat(np.arange(tri.shape[0]), 3)
        edge_tris = np.full((edges.shape[0], 2), -1, dtype=np.int64)
        order = np.argsort(inverse, kind="stable")
        first = np.ones(order.shape[0], dtype=bool)
        first[1:] = inverse[order][1:] != inverse[order][:-1]
        edge_tris[inverse[order][first], 0] = owner[order][first]
        edge_tris[inverse[order][~first], 1] = owner[order][~first]
        return edges, edge_tris, counts

    @property
    def edges(self):
        """Unique undirected edges, shape (E, 2), sorted vertex pairs."""
        return self._edge_structure[0]

    @property
    def edge_triangles(self):
        """Adjacent triangles per edge, ``-1`` in the second slot for boundary edges."""
        return self._edge_structure[1]

    @cached_property
    def interior_edge_index(self):
        return np.flatnonzero(self.edge_triangles[:, 1] >= 0)

    @cached_property
    def boundary_edges(self):
        """Directed boundary edges in loop order, shape (Eb, 2)."""
        pairs = [np.column_stack([loop, np.roll(loop, -1)]) for loop in self.boundary_loops]
        return np.concatenate(pairs) if pairs else np.empty((0, 2), dtype=np.int64)

    @cached_property
    def boundary_edge_triangle(self):
        edges, edge_tris, _ = self._edge_structure
        lookup = {(int(a), int(b)): i for i, (a, b) in enumerate(edges)}
        idx = [lookup[(min(a, b), max(a, b))] for a, b in self.boundary_edges.tolist()]
        return edge_tris[np.asarray(idx, dtype=np.int64), 0]

    @cached_property
    def boundary_vertices(self):
        if not self.boundary_loops:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(self.boundary_loops)

    @cached_property
    def interior_vertices(self):
        mask = np.ones(self.n_vertices, dtype=bool)
        mask[self.boundary_vertices] = False
        return np.flatnonzero(mask)

    # -- geometry -----------------------------------------------------------

    @cached_property
    def chart_areas(self):
        p = self.vertices[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    @cached_property
    def triangle_metric_areas(self):
        centroids = self.vertices[self.triangles].mean(axis=1)
        return self.chart_areas * self.metric.factor(centroids) ** 2

    @cached_property
    def triangle_alpha(self):
        return self.alpha[self.triangles].mean(axis=1)

    def _segment_metric_length(self, seg):
        a = self.vertices[seg[:, 0]]
        b = self.vertices[seg[:, 1]]
        return np.hypot(*(b - a).T) * self.metric.factor(0.5 * (a + b))

    @cached_property
    def edge_metric_lengths(self):
        return self._segment_metric_length(self.edges)

    @cached_property
    def boundary_edge_lengths(self):
        return self._segment_metric_length(self.boundary_edges)

    @cached_property
    def boundary_edge_beta(self):
        return self.beta[self.boundary_edges].mean(axis=1)

    @cached_property
    def bulk_measure(self):
        """``|Omega|_alpha``."""
        return float(np.sum(self.triangle_metric_areas * self.triangle_alpha))

    @cached_property
    def boundary_measure(self):
        """``|dOmega|_beta``."""
        return float(np.sum(self.boundary_edge_lengths * self.boundary_edge_beta))

    @property
    def total_measure(self):
        return self.bulk_measure + self.boundary_measure

    @cached_property
    def metric_area(self):
        return float(np.sum(self.triangle_metric_areas))

    @cached_property
    def metric_perimeter(self):
        return float(np.sum(self.boundary_edge_lengths))

    @cached_property
    def measure_data(self):
        ie = self.interior_edge_index
        ie_tris = self.edge_triangles[ie]
        ie_w = self.edge_metric_lengths[ie] * self.alpha[self.edges[ie]].mean(axis=1)
        be_t = self.boundary_edge_triangle
        be_w = self.boundary_edge_lengths * self.boundary_edge_beta
        bv_t0, bv_t1, bv_w = [], [], []
        offset = 0
        for loop in self.boundary_loops:
            n = loop.shape[0]
            for i in range(n):
                bv_t0.append(be_t[offset + (i - 1) % n])
                bv_t1.append(be_t[offset + i])
                bv_w.append(self.beta[loop[i]])
            offset += n
        return MeasureData(
            tri_bulk=self.triangle_metric_areas * self.triangle_alpha,
            ie_t0=ie_tris[:, 0].copy(),
            ie_t1=ie_tris[:, 1].copy(),
            ie_w=ie_w,
            be_t=np.asarray(be_t, dtype=np.int64),
            be_w=be_w,
            bv_t0=np.asarray(bv_t0, dtype=np.int64),
            bv_t1=np.asarray(bv_t1, dtype=np.int64),
            bv_w=np.asarray(bv_w, dtype=float),
        )

    @cached_property
    def hash(self):
        h = hashlib.sha256()
        for arr in (self.vertices, self.triangles, self.alpha, self.beta):
            h.update(np.ascontiguousarray(arr).tobytes())
        for loop in self.boundary_loops:
            h.update(b"|" + np.ascontiguousarray(loop).tobytes())
        h.update(json.dumps(self.metric.to_json(), sort_keys=True).encode())
        return h.hexdigest()[:16]

    def with_weights(self, alpha=None, beta=None):
        return WeightedMesh(
            self.vertices,
            self.triangles,
            self.boundary_loops,
            self.alpha if alpha is None else alpha,
            self.beta if beta is None else beta,
            self.metric,
        )

    # -- validation ---------------------------------------------------------

    def _validate(self):
        n = self.n_vertices
        tri = self.triangles
        if tri.size == 0:
            raise MeshError("mesh has no triangles")
        if tri.min() < 0 or tri.max() >= n:
            raise MeshError("triangle vertex index out of range")
        if not np.all(np.isfinite(self.vertices)):
            raise MeshError("non-finite vertex coordinates")
        if self.metric.kind == "poincare":
            if np.any(np.sum(self.vertices ** 2, axis=1) >= 1.0):
                raise MeshError("Poincare chart vertices must lie inside the unit disk")
        bad = np.flatnonzero(self.chart_areas <= _AREA_EPS)
        if bad.size:
            raise MeshError(
                f"triangle {int(bad[0])} has non-positive area {self.chart_areas[bad[0]]:.3e}"
                " (degenerate or clockwise)"
            )
        _, edge_tris, counts = self._edge_structure
        if np.any(counts > 2):
            raise MeshError("an edge is shared by more than two triangles")
        edges = self.edges
        boundary_set = {tuple(e) for e in edges[counts == 1].tolist()}
        seen = set()
        for loop in self.boundary_loops:
            if loop.shape[0] < 3:
                raise MeshError("boundary loop with fewer than 3 vertices")
            for a, b in zip(loop.tolist(), np.roll(loop, -1).tolist()):
                key = (min(a, b), max(a, b))
                if key not in boundary_set:
                    raise MeshError(f"loop edge {key} is not a boundary edge")
                if key in seen:
                    raise MeshError(f"boundary edge {key} traversed twice")
                seen.add(key)
        if seen != boundary_set:
            raise MeshError("boundary loops do not cover every boundary edge")
        if self.alpha.shape != (n,) or self.beta.shape != (n,):
            raise MeshError("alpha and beta must have one entry per vertex")
        if not (np.all(np.isfinite(self.alpha)) and np.all(np.isfinite(self.beta))):
            raise MeshError("non-finite weights")
        if np.any(self.alpha < 0) or np.any(self.beta < 0):
            raise MeshError("weights must be nonnegative")
        if np.any(self.alpha[tri].max(axis=1) <= 0):
            raise MeshError("alpha vanishes on a whole triangle")
        if np.any(self.beta[self.interior_vertices] != 0):
            raise MeshError("beta must be zero off the boundary")
        if self.boundary_edges.size and np.any(self.beta[self.boundary_edges].max(axis=1) <= 0):
            raise MeshError("beta vanishes on a whole boundary edge")


# -- construction helpers ---------------------------------------------------


def boundary_loops_from_triangles(triangles):
    """Ordered boundary cycles of a counterclockwise triangulation."""
    tri = np.asarray(triangles, dtype=np.int64)
    directed = tri[:, [[0, 1], [1, 2], [2, 0]]].reshape(-1, 2)
    key = np.sort(directed, axis=1)
    _, inverse, counts = np.unique(key, axis=0, return_inverse=True, return_counts=True)
    on_boundary = counts[inverse.reshape(-1)] == 1
    nxt = {}
    for a, b in directed[on_boundary].tolist():
        if a in nxt:
            raise MeshError(f"boundary is pinched at vertex {a}")
        nxt[a] = b
    loops = []
    while nxt:
        start = min(nxt)
        loop = [start]
        cur = nxt.pop(start)
        while cur != start:
            loop.append(cur)
            cur = nxt.pop(cur)
        loops.append(np.asarray(loop, dtype=np.int64))
    return tuple(loops)


def mesh_from_triangles(vertices, triangles, alpha=None, beta=None, metric=None):
    """Build a mesh from raw arrays, orienting triangles counterclockwise.

    Unspecified weights default to 1 (beta only on boundary vertices).
    """
    vertices = np.asarray(vertices, dtype=float)
    tri = np.array(triangles, dtype=np.int64)
    p = vertices[tri]
    signed = (p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1]) - (
        p[:, 1, 1] - p[:, 0, 1]
    ) * (p[:, 2, 0] - p[:, 0, 0])
    flip = signed < 0
    tri[flip] = tri[flip][:, [0, 2, 1]]
    loops = boundary_loops_from_triangles(tri)
    n = vertices.shape[0]
    if alpha is None:
        alpha = np.ones(n)
    if beta is None:
        beta = np.zeros(n)
        for loop in loops:
            beta[loop] = 1.0
    return WeightedMesh(vertices, tri, loops, alpha, beta, metric or Metric())


def _geometry_metric(geometry):
    if geometry in ("euclidean", "Euclidean"):
        return 1.0, Metric()
    if geometry in ("hyperbolic", "Hyperbolic"):
        return HYPERBOLIC_CHART_RADIUS, Metric("poincare")
    raise MeshError(f"geometry must be 'euclidean' or 'hyperbolic', got {geometry!r}")


def generate_disk_mesh(refinement_level, geometry="euclidean"):
    """Concentric-ring triangulation of the unit disk (or hyperbolic unit ball).

    Level ``L`` uses ``2**L`` rings with ``6 i`` vertices on ring ``i``,
    giving ``6 * 4**L`` triangles. Vertices sit at angles ``pi/2 + 2 pi j /
    (6 i)`` so the vertical diameter is a union of mesh edges. The hyperbolic
    ball of radius 1 is the chart disk of radius ``tanh(1/2)`` in the
    Poincare model. Weights are 1 (not normalized).
    """
    if refinement_level < 0:
        raise MeshError("refinement_level must be nonnegative")
    radius, metric = _geometry_metric(geometry)
    n_rings = 2 ** int(refinement_level)
    pts = [(0.0, 0.0)]
    ring_start = [0]
    for i in range(1, n_rings + 1):
        ring_start.append(len(pts))
        theta = 0.5 * np.pi + 2.0 * np.pi * np.arange(6 * i) / (6 * i)
        r = radius * i / n_rings
        pts.extend(zip(r * np.cos(theta), r * np.sin(theta)))
    tris = [(0, ring_start[1] + j, ring_start[1] + (j + 1) % 6) for j in range(6)]
    for i in range(1, n_rings):
        a, b = 6 * i, 6 * (i + 1)
        sa, sb = ring_start[i], ring_start[i + 1]
        p = q = 0
        while p < a or q < b:
            # angle of next outer (q+1)/b vs next inner (p+1)/a, compared exactly
            take_outer = p == a or (q < b and (q + 1) * a <= (p + 1) * b)
            if take_outer:
                tris.append((sa + p % a, sb + q, sb + (q + 1) % b))
                q += 1
            else:
                tris.append((sa + p, sb + q % b, sa + (p + 1) % a))
                p += 1
    return mesh_from_triangles(np.asarray(pts), tris, metric=metric)


def generate_fan_mesh(n_sides, geometry="euclidean"):
    """Regular ``n_sides``-gon inscribed in the unit disk, fanned from its centre.

    Small enough for exhaustive subset enumeration (``n_sides`` triangles).
    """
    if n_sides < 3:
        raise MeshError("a fan mesh needs at least 3 sides")
    radius, metric = _geometry_metric(geometry)
    theta = 0.5 * np.pi + 2.0 * np.pi * np.arange(n_sides) / n_sides
    pts = np.vstack([[0.0, 0.0], np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])])
    tris = [(0, 1 + j, 1 + (j + 1) % n_sides) for j in range(n_sides)]
    return mesh_from_triangles(pts, tris, metric=metric)


def _sample_arc(center, radius, t0, t1, h):
    n = max(2, int(np.ceil(radius * abs(t1 - t0) / h)))
    t = np.linspace(t0, t1, n + 1)[:-1]
    return np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)])


def _sample_segment(a, b, h):
    a, b = np.asarray(a, float), np.asarray(b, float)
    n = max(1, int(np.ceil(np.hypot(*(b - a)) / h)))
    s = np.linspace(0.0, 1.0, n + 1)[:-1]
    return a + s[:, None] * (b - a)


def _triangulate_polygon(boundary, h):
    """Delaunay triangulation of a simple polygon given by densely sampled ccw boundary points.

    Interior points come from a triangular lattice of spacing ``h``; the
    result is rejected unless the mesh boundary is exactly the input ring.
    """
    import shapely
    from scipy.spatial import Delaunay

    poly = shapely.Polygon(boundary)
    if not poly.is_valid:
        raise MeshError("boundary polygon self-intersects")
    xmin, ymin, xmax, ymax = poly.bounds
    dy = h * np.sqrt(3.0) / 2.0
    rows = []
    for r, y in enumerate(np.arange(ymin + dy / 2, ymax, dy)):
        xs = np.arange(xmin + (h / 2 if r % 2 else 0.0), xmax, h)
        rows.append(np.column_stack([xs, np.full_like(xs, y)]))
    lattice = np.vstack(rows) if rows else np.empty((0, 2))
    if lattice.size:
        inside = shapely.contains_xy(poly, lattice[:, 0], lattice[:, 1])
        lattice = lattice[inside]
        dist = shapely.distance(shapely.points(lattice), poly.exterior)
        lattice = lattice[dist > 0.55 * h]
    pts = np.vstack([boundary, lattice])
    tri = Delaunay(pts).simplices
    cent = pts[tri].mean(axis=1)
    keep = shapely.contains_xy(poly, cent[:, 0], cent[:, 1])
    tri = tri[keep]
    used = np.unique(tri)
    remap = np.full(pts.shape[0], -1, dtype=np.int64)
    remap[used] = np.arange(used.shape[0])
    mesh = mesh_from_triangles(pts[used], remap[tri])
    nb = boundary.shape[0]
    if len(mesh.boundary_loops) != 1 or mesh.boundary_loops[0].shape[0] != nb or np.any(used[:nb] != np.arange(nb)):
        raise MeshError("triangulation does not conform to the polygon boundary; try another refinement level")
    return mesh


def generate_dumbbell_mesh(ball_radius, neck_width, neck_length, refinement_level):
    """Two disks of radius ``ball_radius`` joined by a straight neck.

    The neck is ``neck_length`` long between its junctions with the two
    circles and ``neck_width`` wide; mesh spacing is ``ball_radius / 2**level``.
    """
    R, w, L = float(ball_radius), float(neck_width), float(neck_length)
    if R <= 0 or w <= 0 or L <= 0:
        raise MeshError("dumbbell dimensions must be positive")
    if w >= R:
        raise MeshError("neck_width must be smaller than ball_radius")
    if refinement_level < 0:
        raise MeshError("refinement_level must be nonnegative")
    h = R / 2 ** int(refinement_level)
    h = min(h, w, L / 2)
    t0 = np.arcsin(w / (2 * R))
    d = np.sqrt(R * R - (w / 2) ** 2)
    c_left = (-(L / 2 + d), 0.0)
    c_right = (L / 2 + d, 0.0)
    ring = np.vstack([
        _sample_segment((-L / 2, -w / 2), (L / 2, -w / 2), h),
        _sample_arc(c_right, R, np.pi + t0, 3 * np.pi - t0, h),
        _sample_segment((L / 2, w / 2), (-L / 2, w / 2), h),
        _sample_arc(c_left, R, t0, 2 * np.pi - t0, h),
    ])
    return _triangulate_polygon(ring, h)


def generate_square_disk_mesh():
    """15-triangle asymmetric dumbbell: a 2x2 square joined to a disk of equal area.

    Small enough for exhaustive enumeration; the two lobes have the same
    area but different perimeters.
    """
    r = 2.0 / np.sqrt(np.pi)
    w = 0.5
    t0 = np.arcsin(w / (2 * r))
    cx = np.sqrt(r * r - (w / 2) ** 2)
    pts = [
        (-3.0, -1.0), (-1.0, -1.0), (-1.0, -w / 2), (-1.0, w / 2), (-1.0, 1.0), (-3.0, 1.0),
        (-2.0, 0.0), (0.0, -w / 2), (0.0, w / 2),
    ]
    angles = np.pi + t0 + np.arange(1, 6) * (2 * np.pi - 2 * t0) / 6
    pts.extend((cx + r * np.cos(a), r * np.sin(a)) for a in angles)
    pts.append((cx, 0.0))
    tris = [
        (0, 1, 6), (1, 2, 6), (2, 3, 6), (3, 4, 6), (4, 5, 6), (5, 0, 6),
        (2, 7, 8), (2, 8, 3),
        (7, 9, 14), (9, 10, 14), (10, 11, 14), (11, 12, 14), (12, 13, 14), (13, 8, 14), (8, 7, 14),
    ]
    return mesh_from_triangles(np.asarray(pts), tris)


# -- weights and metric -----------------------------------------------------


def normalize_weights(mesh):
    """Scale alpha and beta jointly so that ``|Omega|_alpha + |dOmega|_beta = 1``."""
    total = mesh.total_measure
    if not total > 0:
        raise MeshError("cannot normalize: total weighted measure is zero")
    return mesh.with_weights(mesh.alpha / total, mesh.beta / total)


def constant_weights(mesh, alpha_bar, continuum_area=None, continuum_perimeter=None):
    """``alpha = alpha_bar/|Omega|``, ``beta = (1 - alpha_bar)/|dOmega|``.

    Areas default to the mesh's own metric area and perimeter; pass the
    continuum values to compare against closed-form disk results.
    """
    area = mesh.metric_area if continuum_area is None else continuum_area
    perim = mesh.metric_perimeter if continuum_perimeter is None else continuum_perimeter
    alpha = np.full(mesh.n_vertices, alpha_bar / area)
    beta = np.zeros(mesh.n_vertices)
    beta[mesh.boundary_vertices] = (1.0 - alpha_bar) / perim
    return mesh.with_weights(alpha, beta)


def random_weights(mesh, seed, low=0.5, high=1.5, normalize=True):
    """Independent uniform vertex weights in ``[low, high]`` (beta on the boundary only)."""
    rng = np.random.default_rng(seed)
    alpha = rng.uniform(low, high, mesh.n_vertices)
    beta = np.zeros(mesh.n_vertices)
    bv = mesh.boundary_vertices
    beta[bv] = rng.uniform(low, high, bv.shape[0])
    out = mesh.with_weights(alpha, beta)
    return normalize_weights(out) if normalize else out


def scale_metric(mesh, factor, preserve_measure=False):
    """Multiply the metric by ``factor**2``: lengths scale by ``factor``, areas by ``factor**2``.

    Weights are left untouched unless ``preserve_measure`` is set, in which
    case ``alpha /= factor**2`` and ``beta /= factor`` so the measure
    ``alpha*area + beta*length`` of every set is unchanged.
    """
    if not factor > 0:
        raise MeshError("metric scale factor must be positive")
    metric = Metric(mesh.metric.kind, mesh.metric.scale * factor)
    alpha, beta = mesh.alpha, mesh.beta
    if preserve_measure:
        alpha = alpha / factor ** 2
        beta = beta / factor
    return WeightedMesh(mesh.vertices, mesh.triangles, mesh.boundary_loops, alpha, beta, metric)


# -- subsets ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TriangleSubset:
    """A union of closed triangles of ``parent``."""

    parent: WeightedMesh
    members: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.members, dtype=np.int64).reshape(-1)
        if idx.size and (idx.min() < 0 or idx.max() >= self.parent.n_triangles):
            raise MeshError("triangle index out of range")
        uniq = np.unique(idx)
        if uniq.size != idx.size:
            raise MeshError("duplicate triangle indices in subset")
        uniq.setflags(write=False)
        object.__setattr__(self, "members", uniq)

    @classmethod
    def from_mask(cls, parent, mask):
        return cls(parent, np.flatnonzero(np.asarray(mask, dtype=bool)))

    @classmethod
    def from_bits(cls, parent, bits):
        bits = int(bits)
        return cls(parent, [t for t in range(parent.n_triangles) if (bits >> t) & 1])

    @property
    def mask(self):
        m = np.zeros(self.parent.n_triangles, dtype=bool)
        m[self.members] = True
        return m

    def complement(self):
        return TriangleSubset.from_mask(self.parent, ~self.mask)

    def __len__(self):
        return int(self.members.size)


SubsetMeasures = namedtuple("SubsetMeasures", "bulk interior_cut exterior_arc arc_endpoints")


def subset_measures(subset):
    """``(|A|_alpha, |d_I A|_alpha, |d_E A|_beta, |dd_E A|_beta)`` for a triangle union.

    Edge weights use the mean of the endpoint densities; the arc endpoints
    are boundary vertices whose two incident boundary edges differ in
    membership, each counted with its beta value.
    """
    data = subset.parent.measure_data
    m = subset.mask
    return SubsetMeasures(
        float(data.tri_bulk[m].sum()),
        float(data.ie_w[m[data.ie_t0] != m[data.ie_t1]].sum()),
        float(data.be_w[m[data.be_t]].sum()),
        float(data.bv_w[m[data.bv_t0] != m[data.bv_t1]].sum()),
    )


def half_disk_subset(mesh, axis=0):
    """Triangles whose centroid has nonnegative coordinate ``axis``."""
    cent = mesh.vertices[mesh.triangles].mean(axis=1)
    return TriangleSubset.from_mask(mesh, cent[:, axis] >= 0.0)


# -- serialization ----------------------------------------------------------


def mesh_to_dict(mesh):
    beta = {str(int(v)): float(mesh.beta[v]) for v in mesh.boundary_vertices}
    return {
        "vertices": mesh.vertices.tolist(),
        "triangles": mesh.triangles.tolist(),
        "boundary_loops": [loop.tolist() for loop in mesh.boundary_loops],
        "alpha": mesh.alpha.tolist(),
        "beta": beta,
        "metric": mesh.metric.to_json(),
    }


def mesh_from_dict(obj):
    try:
        vertices = np.asarray(obj["vertices"], dtype=float)
        beta = np.zeros(vertices.shape[0])
        for key, val in obj["beta"].items():
            beta[int(key)] = float(val)
        return WeightedMesh(
            vertices,
            np.asarray(obj["triangles"], dtype=np.int64),
            tuple(np.asarray(loop, dtype=np.int64) for loop in obj["boundary_loops"]),
            np.asarray(obj["alpha"], dtype=float),
            beta,
            Metric.from_json(obj.get("metric", "euclidean")),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise MeshError(f"malformed mesh document: {exc}") from exc


def save_mesh(mesh, path):
    with open(path, "w") as fh:
        json.dump(mesh_to_dict(mesh), fh, indent=None)
        fh.write("\n")


def load_mesh(path):
    with open(path) as fh:
        return mesh_from_dict(json.load(fh))
