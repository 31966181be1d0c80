"""Spectra of sticky-reflecting diffusions on weighted 2D domains, with Cheeger-type bounds."""

from ._backend import BACKEND
from .assembly import ProblemKind, SpectralProblem, assemble_problem
from .cheeger import (
    CheegerReport,
    ConstantKind,
    RestrictionVariant,
    Theorem,
    boundary_cheeger,
    brute_force_constant,
    constant_matrix,
    lower_bound,
    ratio,
    sweep_upper_bound,
)
from .disk import DiskModel, bound_curve, disk_gap, neumann_gap, secular_value
from .eigensolver import SpectralResult, eigenvalue_table, rayleigh_quotient, solve_generalized
from .mesh import (
    TriangleSubset,
    WeightedMesh,
    constant_weights,
    generate_disk_mesh,
    generate_dumbbell_mesh,
    generate_fan_mesh,
    generate_square_disk_mesh,
    load_mesh,
    normalize_weights,
    random_weights,
    save_mesh,
    scale_metric,
    subset_measures,
)
from .report import VerificationReport, verify_all

__version__ = "0.1.0"
