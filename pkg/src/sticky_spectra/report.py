"""Verification reports: eigenvalue orderings, constant comparisons and Cheeger-type bounds.

Every relation is recorded as a :class:`Check` with a signed slack that is
positive when the relation holds. The schema lists every clause even when
it cannot be evaluated on the given mesh (status ``skipped``).
"""

import json
import math
import platform
from dataclasses import asdict, dataclass, field

import numpy as np

from . import cheeger
from ._backend import BACKEND
from .assembly import AssemblyError, ProblemKind, assemble_problem
from .cheeger import RestrictionVariant, Theorem
from .eigensolver import eigenvalue_table, solve_generalized

EIGEN_TOL = -1e-8
CONSTANT_RTOL = 1e-12

EIGEN_CLAUSE = "eigenvalue-comparison"
DIFFUSION_CLAUSE = "diffusion-eigenvalue-comparison"
CONSTANT_CLAUSE = "constant-comparison"
SR_BOUND_CLAUSE = "sticky-cheeger-bound"
SRBD_BOUND_CLAUSE = "diffusion-cheeger-bound"


@dataclass
class Check:
    name: str
    clause: str
    lhs: float
    rhs: float
    relation: str
    slack: float
    tolerance: float
    status: str
    note: str = ""

    def to_dict(self):
        d = asdict(self)
        for k in ("lhs", "rhs", "slack"):
            d[k] = _json_number(d[k])
        return d


def _json_number(v):
    """Finite floats pass through; infinities become strings and NaN becomes null."""
    if math.isnan(v):
        return None
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _slack(lhs, rhs, relation):
    if relation in ("<=", "<"):
        return rhs - lhs
    return lhs - rhs


def make_check(name, clause, lhs, rhs, relation, tolerance, informational=False, note=""):
    """Evaluate ``lhs relation rhs``; pass when ``slack >= tolerance`` (``> 0`` for strict relations)."""
    lhs, rhs = float(lhs), float(rhs)
    if math.isinf(lhs) and math.isinf(rhs):
        return Check(name, clause, lhs, rhs, relation, math.nan, tolerance, "skipped",
                     note or "both sides infinite")
    slack = _slack(lhs, rhs, relation)
    if relation in ("<", ">"):
        ok = slack > 0
    else:
        ok = slack >= tolerance
    if math.isinf(rhs) and relation == "<=" and not note:
        note = "right-hand side infinite (no such eigenvalue on this mesh)"
    status = "info" if informational else ("pass" if ok else "fail")
    return Check(name, clause, lhs, rhs, relation, slack, tolerance, status, note)


def skipped(name, clause, relation, note):
    return Check(name, clause, math.nan, math.nan, relation, math.nan, 0.0, "skipped", note)


@dataclass
class VerificationReport:
    mesh_id: str
    mesh_hash: str
    checks: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self):
        return {
            "mesh_id": self.mesh_id,
            "mesh_hash": self.mesh_hash,
            "passed": self.passed,
            "metadata": self.metadata,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def summary(self):
        lines = []
        for c in self.checks:
            slack = "" if math.isnan(c.slack) else f"slack={c.slack:+.3e}"
            lines.append(f"[{c.status:7s}] {c.clause:32s} {c.name:40s} {slack}")
        n_fail = len(self.failures)
        lines.append(f"{len(self.checks)} checks, {n_fail} failed")
        return "\n".join(lines)


def _eigen_checks(table, delta, count):
    sr = table["sr"]
    srbd = table[ProblemKind.sticky_diffusion(delta).label]
    out = []
    for k in range(1, count):
        for other in ("neumann", "dirichlet", "steklov"):
            vals = table.get(other)
            if vals is None:
                out.append(skipped(f"lam{k}^SR <= lam{k}^{other}", EIGEN_CLAUSE, "<=",
                                   f"{other} problem not assemblable on this mesh"))
                continue
            out.append(make_check(f"lam{k}^SR <= lam{k}^{other}", EIGEN_CLAUSE,
                                  sr[k], vals[k], "<=", EIGEN_TOL))
        out.append(make_check(f"lam{k}^SRBD(delta={delta:g}) >= lam{k}^SR", DIFFUSION_CLAUSE,
                              srbd[k], sr[k], ">=", EIGEN_TOL))
    return out


def _constant_checks(table, informational):
    out = []
    for r in table.relations():
        if r.relation == ">":
            tol = 0.0
        else:
            finite = [abs(x) for x in (r.lhs, r.rhs) if math.isfinite(x)]
            tol = -CONSTANT_RTOL * max([1.0] + finite)
        note = "sweep values are upper bounds; comparison not certified" if informational else ""
        out.append(make_check(r.name, CONSTANT_CLAUSE, r.lhs, r.rhs, r.relation, tol,
                              informational=informational, note=note))
    return out


def _theorem_checks(table, lam_sr, lam_srbd, delta, have_hd, informational):
    note = "constants from threshold sweeps (upper bounds); not certified" if informational else ""
    out = []
    for th, label in ((Theorem.SR_COMBINED, "h-B h-C / 4"), (Theorem.SR_BULK, "hB hC / 4"),
                      (Theorem.SR_BOUNDARY, "h~B h~C / 4")):
        b = cheeger.bound_from_table(table, th)
        out.append(make_check(f"lam1^SR >= {label}", SR_BOUND_CLAUSE, lam_sr, b.value, ">=",
                              EIGEN_TOL, informational, note))
    for v in (RestrictionVariant.COMBINED, RestrictionVariant.BULK, RestrictionVariant.BOUNDARY):
        name = f"lam1^SRBD >= {v.symbol}D / 4"
        if not have_hd:
            out.append(skipped(name, SRBD_BOUND_CLAUSE, ">=",
                               f"HD enumeration limited to {cheeger.HD_LIMIT} triangles"))
            continue
        b = cheeger.bound_from_table(table, Theorem.SRBD_D, v)
        out.append(make_check(name, SRBD_BOUND_CLAUSE, lam_srbd, b.value, ">=", EIGEN_TOL,
                              informational, note))
    b = cheeger.bound_from_table(table, Theorem.SRBD_E)
    out.append(make_check("lam1^SRBD >= min(h~C, hC(bdry)) h~E / 4", SRBD_BOUND_CLAUSE,
                          lam_srbd, b.value, ">=", EIGEN_TOL, informational, note))
    return out


def verify_all(mesh, delta=1.0, brute_force=True, count=4, mesh_id="", tol=1e-9):
    """Run every ordering and bound check on ``mesh``.

    With ``brute_force`` the constants are exact discrete infima and the
    bound checks are certified; otherwise constants come from threshold
    sweeps of the sticky-reflection eigenvectors and the constant and bound
    rows are informational.
    """
    if brute_force and mesh.n_triangles > cheeger.ENUMERATION_LIMIT:
        raise cheeger.CheegerError(
            f"brute force needs <= {cheeger.ENUMERATION_LIMIT} triangles, mesh has {mesh.n_triangles}"
        )
    kinds = [ProblemKind.sticky(), ProblemKind.sticky_diffusion(delta), ProblemKind.neumann()]
    table = {}
    for kind in kinds:
        table.update(eigenvalue_table(mesh, [kind], count, tol))
    for kind in (ProblemKind.dirichlet(), ProblemKind.steklov()):
        try:
            table.update(eigenvalue_table(mesh, [kind], count, tol))
        except AssemblyError:
            pass
    checks = _eigen_checks(table, delta, count)
    lam_sr = table["sr"][1]
    lam_srbd = table[ProblemKind.sticky_diffusion(delta).label][1]
    if brute_force:
        ctab = cheeger.constant_matrix(mesh, delta)
        have_hd = (cheeger.ConstantKind.HD, RestrictionVariant.COMBINED) in ctab.reports
    else:
        problem = assemble_problem(mesh, ProblemKind.sticky())
        res = solve_generalized(problem, min(count, problem.size), tol=tol)
        cand = cheeger.eigen_candidates(res.eigenvectors, res.eigenvalues)
        ctab = cheeger.sweep_matrix(mesh, cand, delta)
        have_hd = True
    informational = not brute_force
    checks += _constant_checks(ctab, informational)
    checks += _theorem_checks(ctab, lam_sr, lam_srbd, delta, have_hd, informational)
    metadata = {
        "delta": float(delta),
        "brute_force": bool(brute_force),
        "count": int(count),
        "solver_tol": tol,
        "eigen_slack_tolerance": EIGEN_TOL,
        "constant_relative_tolerance": CONSTANT_RTOL,
        "n_vertices": mesh.n_vertices,
        "n_triangles": mesh.n_triangles,
        "total_measure": mesh.total_measure,
        "backend": BACKEND,
        "numpy": np.__version__,
        "python": platform.python_version(),
        "eigenvalues": {k: [float(x) if math.isfinite(x) else None for x in v] for k, v in table.items()},
        "constants": {f"{k.value}/{v.value}": (r.value if r.admissible else None)
                      for (k, v), r in ctab.reports.items()},
    }
    return VerificationReport(mesh_id or mesh.hash, mesh.hash, checks, metadata)
