"""P1 finite element forms for the weighted eigenvalue problems.

Metric handling for a conformal metric ``phi |dx|`` in two dimensions:

* the Dirichlet energy ``int |grad u|_g^2 alpha dvol_g`` is conformally
  invariant, so the bulk stiffness is the Euclidean-chart stiffness
  weighted by alpha only (no ``phi``);
* the bulk mass carries ``phi**2`` (area element);
* boundary mass carries ``phi`` (length element) and boundary stiffness
  carries ``1/phi`` (tangential derivative squared times length).

``phi`` is sampled at triangle centroids and edge midpoints.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

_KINDS = ("neumann", "dirichlet", "steklov", "sr", "srbd")


class AssemblyError(ValueError):
    """Raised when a form cannot be assembled on the given mesh."""


@dataclass(frozen=True)
class ProblemKind:
    """One of the eigenvalue problems; ``delta`` is the boundary diffusion speed.

    ``sr`` is stored as ``srbd`` with ``delta = 0`` so both spellings
    assemble identical matrices.
    """

    name: str
    delta: float = 0.0

    def __post_init__(self):
        name = self.name.lower()
        if name not in _KINDS:
            raise ValueError(f"unknown problem kind {self.name!r}; expected one of {_KINDS}")
        if not self.delta >= 0:
            raise ValueError("delta must be nonnegative")
        if name == "sr":
            name = "srbd"
            if self.delta != 0:
                raise ValueError("sticky reflection has no boundary diffusion; use srbd")
        if name != "srbd" and self.delta != 0:
            raise ValueError(f"delta is only meaningful for srbd, not {name}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "delta", float(self.delta))

    @classmethod
    def neumann(cls):
        return cls("neumann")

    @classmethod
    def dirichlet(cls):
        return cls("dirichlet")

    @classmethod
    def steklov(cls):
        return cls("steklov")

    @classmethod
    def sticky(cls):
        return cls("srbd", 0.0)

    @classmethod
    def sticky_diffusion(cls, delta):
        return cls("srbd", delta)

    @classmethod
    def parse(cls, text, delta=None):
        """Parse ``"sr"``, ``"srbd"``, ``"srbd:0.5"`` and similar CLI spellings."""
        name, _, tail = text.partition(":")
        name = name.strip().lower()
        d = float(tail) if tail else delta
        if name == "srbd":
            return cls(name, 1.0 if d is None else d)
        return cls(name, 0.0 if d is None else d)

    @property
    def has_constant_kernel(self):
        return self.name in ("neumann", "srbd", "steklov")

    @property
    def label(self):
        if self.name == "srbd":
            return "sr" if self.delta == 0 else f"srbd(delta={self.delta:g})"
        return self.name

    def to_json(self):
        return {"name": self.label.split("(")[0], "delta": self.delta}


@dataclass(frozen=True, eq=False)
class SpectralProblem:
    """Symmetric pair ``(stiffness, mass)`` on the degrees of freedom ``dofs``."""

    stiffness: object
    mass: object
    dofs: np.ndarray
    kind: ProblemKind
    mesh_hash: str = ""

    @property
    def size(self):
        return int(self.dofs.shape[0])

    def to_full(self, vectors, n_vertices):
        """Embed dof vectors (columns) into vertex vectors, zero elsewhere."""
        vectors = np.asarray(vectors)
        out = np.zeros((n_vertices,) + vectors.shape[1:])
        out[self.dofs] = vectors
        return out


def _element_gradients(mesh):
    p = mesh.vertices[mesh.triangles]
    area = mesh.chart_areas
    if np.any(area <= 0):
        bad = int(np.flatnonzero(area <= 0)[0])
        raise AssemblyError(f"triangle {bad} is degenerate")
    # edge opposite vertex i, rotated: grad phi_i = perp(e_i) / (2 A)
    e = np.stack([p[:, 2] - p[:, 1], p[:, 0] - p[:, 2], p[:, 1] - p[:, 0]], axis=1)
    return e, area


def assemble_bulk_stiffness(mesh):
    """``int grad u . grad v alpha`` with alpha averaged per triangle."""
    e, area = _element_gradients(mesh)
    local = np.einsum("tik,tjk->tij", e, e) / (4.0 * area)[:, None, None]
    local *= mesh.triangle_alpha[:, None, None]
    return _scatter(mesh.triangles, local, mesh.n_vertices)


def assemble_bulk_mass(mesh, lumped=False):
    """``int u v alpha dvol``; entries sum to ``|Omega|_alpha``."""
    w = mesh.triangle_metric_areas * mesh.triangle_alpha
    if lumped:
        diag = np.zeros(mesh.n_vertices)
        np.add.at(diag, mesh.triangles.reshape(-1), np.repeat(w / 3.0, 3))
        return sp.diags(diag).tocsr()
    ref = (np.ones((3, 3)) + np.eye(3)) / 12.0
    return _scatter(mesh.triangles, w[:, None, None] * ref, mesh.n_vertices)


def assemble_boundary_mass(mesh, lumped=False):
    """``int_dOmega u v beta dsigma``; entries sum to ``|dOmega|_beta``."""
    edges = mesh.boundary_edges
    w = mesh.boundary_edge_lengths * mesh.boundary_edge_beta
    if lumped:
        diag = np.zeros(mesh.n_vertices)
        np.add.at(diag, edges.reshape(-1), np.repeat(w / 2.0, 2))
        return sp.diags(diag).tocsr()
    ref = (np.ones((2, 2)) + np.eye(2)) / 6.0
    return _scatter(edges, w[:, None, None] * ref, mesh.n_vertices)


def assemble_boundary_stiffness(mesh):
    """``int_dOmega grad_tau u . grad_tau v beta dsigma`` along each loop."""
    edges = mesh.boundary_edges
    length = mesh.boundary_edge_lengths
    if np.any(length <= 0):
        raise AssemblyError(f"boundary edge {int(np.flatnonzero(length <= 0)[0])} has zero length")
    w = mesh.boundary_edge_beta / length
    ref = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return _scatter(edges, w[:, None, None] * ref, mesh.n_vertices)


def _scatter(cells, local, n):
    k = cells.shape[1]
    rows = np.repeat(cells, k, axis=1).reshape(-1)
    cols = np.tile(cells, (1, k)).reshape(-1)
    return sp.coo_matrix((local.reshape(-1), (rows, cols)), shape=(n, n)).tocsr()


def assemble_problem(mesh, kind, lumped=False):
    """Assemble the matrix pair for ``kind`` on ``mesh``.

    neumann: ``(K, M)``; dirichlet: ``(K, M)`` on interior vertices;
    srbd(delta): ``(K + delta K_b, M + M_b)``; steklov: the Schur complement
    ``K_bb - K_bi K_ii^-1 K_ib`` against ``M_b`` on boundary vertices.
    """
    if isinstance(kind, str):
        kind = ProblemKind.parse(kind)
    K = assemble_bulk_stiffness(mesh)
    M = assemble_bulk_mass(mesh, lumped=lumped)
    n = mesh.n_vertices
    if kind.name == "neumann":
        return SpectralProblem(K, M, np.arange(n), kind, mesh.hash)
    if kind.name == "srbd":
        A = K + kind.delta * assemble_boundary_stiffness(mesh) if kind.delta else K
        B = M + assemble_boundary_mass(mesh, lumped=lumped)
        return SpectralProblem(A.tocsr(), B.tocsr(), np.arange(n), kind, mesh.hash)
    interior = mesh.interior_vertices
    if interior.size == 0:
        raise AssemblyError(f"{kind.name} problem needs at least one interior vertex")
    if kind.name == "dirichlet":
        return SpectralProblem(
            K[interior][:, interior].tocsr(), M[interior][:, interior].tocsr(), interior, kind, mesh.hash
        )
    bnd = np.sort(mesh.boundary_vertices)
    K_ii = K[interior][:, interior].tocsc()
    K_ib = K[interior][:, bnd].toarray()
    K_bb = K[bnd][:, bnd].toarray()
    try:
        lu = spla.splu(K_ii)
    except RuntimeError as exc:
        raise AssemblyError(f"interior stiffness block is singular: {exc}") from exc
    X = lu.solve(K_ib)
    if not np.all(np.isfinite(X)):
        raise AssemblyError("interior stiffness block is numerically singular")
    S = K_bb - K_ib.T @ X
    S = 0.5 * (S + S.T)
    Mb = assemble_boundary_mass(mesh, lumped=lumped)[bnd][:, bnd].toarray()
    return SpectralProblem(S, Mb, bnd, kind, mesh.hash)


def export_matrix_market(problem, stem):
    """Write ``<stem>_stiffness.mtx`` and ``<stem>_mass.mtx``; returns the two paths."""
    from scipy.io import mmwrite

    paths = []
    for name, mat in (("stiffness", problem.stiffness), ("mass", problem.mass)):
        path = f"{stem}_{name}.mtx"
        mmwrite(path, sp.coo_matrix(mat), comment=f"{problem.kind.label} {name}", symmetry="symmetric")
        paths.append(path)
    return paths
