"""Smallest eigenpairs of symmetric-definite pencils ``A v = lam B v``."""

import json
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .assembly import ProblemKind, assemble_problem

logger = logging.getLogger(__name__)

DENSE_LIMIT = 3000


class EigenSolverError(RuntimeError):
    """Solver failure; ``residuals`` holds the best residuals reached, if any."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


@dataclass(frozen=True, eq=False)
class SpectralResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    kind: ProblemKind
    residuals: np.ndarray
    dofs: np.ndarray
    mesh_hash: str = ""
    method: str = "dense"

    def to_dict(self):
        return {
            "kind": self.kind.to_json(),
            "mesh_hash": self.mesh_hash,
            "method": self.method,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "residuals": [float(x) for x in self.residuals],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _dense(M):
    return M.toarray() if sp.issparse(M) else np.asarray(M, dtype=float)


def _residuals(A, B, lam, V):
    AV = A @ V
    BV = B @ V
    res = np.linalg.norm(AV - BV * lam[None, :], axis=0)
    return res / np.linalg.norm(BV, axis=0)


def _fix_signs(V):
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


def _solve_dense(A, B, count):
    A = _dense(A)
    B = _dense(B)
    try:
        la.cholesky(B, lower=True)
    except la.LinAlgError as exc:
        raise EigenSolverError("mass matrix is not positive definite") from exc
    lam, V = la.eigh(A, B, subset_by_index=[0, count - 1])
    return lam, V


def _solve_iterative(A, B, count, tol, deflate, maxiter=300):
    """Blocked shift-invert subspace iteration with Rayleigh-Ritz.

    The constant kernel is removed by B-orthogonal deflation; the small
    shift only keeps the factorised operator nonsingular.
    """
    n = A.shape[0]
    A = sp.csr_matrix(A)
    B = sp.csr_matrix(B)
    scale = float(A.diagonal().mean() / B.diagonal().mean())
    lu = spla.splu((A + 1e-6 * scale * B).tocsc())
    want = count - 1 if deflate else count
    block = min(n - 1, want + max(8, want))
    c = np.ones((n, 1))
    c /= np.sqrt((c.T @ (B @ c)).item())

    def project(X):
        return X - c @ (c.T @ (B @ X)) if deflate else X

    X = project(np.random.default_rng(0).standard_normal((n, block)))
    res = None
    for _ in range(maxiter):
        X = project(lu.solve(B @ X))
        Ar = X.T @ (A @ X)
        Br = X.T @ (B @ X)
        mu, W = la.eigh(0.5 * (Ar + Ar.T), 0.5 * (Br + Br.T))
        X = X @ W
        res = _residuals(A, B, mu[:want], X[:, :want])
        if np.all(res <= 1e-2 * tol):
            break
    else:
        raise EigenSolverError("subspace iteration did not converge", res)
    lam, V = mu[:want], X[:, :want]
    if deflate:
        lam = np.concatenate([[0.0], lam])
        V = np.hstack([c, V])
    return lam, V


def solve_generalized(problem, count, tol=1e-9, method="auto"):
    """The ``count`` smallest eigenpairs of ``problem``.

    Uses a dense factorisation up to ``DENSE_LIMIT`` dofs and blocked
    shift-invert subspace iteration above. Eigenvectors are B-orthonormal;
    every pair is checked against ``||A v - lam B v|| <= tol ||B v||``.
    """
    n = problem.size
    if count < 1 or count > n:
        raise ValueError(f"count must be in [1, {n}], got {count}")
    if method == "auto":
        method = "dense" if n <= DENSE_LIMIT else "iterative"
    A, B = problem.stiffness, problem.mass
    if method == "dense":
        lam, V = _solve_dense(A, B, count)
    elif method == "iterative":
        if count >= n // 3:
            raise ValueError("iterative path is meant for a few eigenpairs; use method='dense'")
        lam, V = _solve_iterative(A, B, count, tol, deflate=problem.kind.has_constant_kernel)
    else:
        raise ValueError(f"unknown method {method!r}")
    V = _fix_signs(V)
    res = _residuals(A, B, lam, V)
    if np.any(res > tol):
        raise EigenSolverError(
            f"eigenpairs did not reach residual tolerance {tol:g} (worst {res.max():.2e})", res
        )
    return SpectralResult(lam, V, problem.kind, res, problem.dofs, problem.mesh_hash, method)


def rayleigh_quotient(problem, vector):
    """``(u^T A u) / (u^T B u)`` on the problem's dofs."""
    u = np.asarray(vector, dtype=float)
    den = float(u @ (problem.mass @ u))
    if not den > 0:
        raise ValueError("vector has zero mass norm")
    return float(u @ (problem.stiffness @ u)) / den


def eigenvalue_table(mesh, kinds, count, tol=1e-9):
    """``{kind.label: [lam_0, ..., lam_{count-1}]}``; missing eigenvalues are ``inf``.

    A discrete problem with fewer than ``count`` dofs has no higher
    eigenvalues; ``inf`` keeps orderings like ``lam_k^SR <= lam_k^D``
    vacuously true there.
    """
    table = {}
    for kind in kinds:
        if isinstance(kind, str):
            kind = ProblemKind.parse(kind)
        problem = assemble_problem(mesh, kind)
        k = min(count, problem.size)
        vals = np.full(count, np.inf)
        vals[:k] = solve_generalized(problem, k, tol=tol).eigenvalues
        table[kind.label] = vals
    return table
