"""Disk spectral-gap curves as CSV and SVG.

fig1 / fig2: gap of the sticky-reflection problem against ``alpha_bar``
on the Euclidean unit disk / hyperbolic unit ball, with the half-disk
bound curve. fig3: Euclidean disk with ``gamma = 5``, gap against the
boundary diffusion speed ``delta``, with the Neumann gap as reference.
"""

import csv
import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ._backend import max_workers
from .assembly import ProblemKind, assemble_problem
from .disk import (
    EUCLIDEAN,
    HYPERBOLIC,
    DiskModel,
    ball_area,
    ball_perimeter,
    bound_curve,
    disk_gap,
    neumann_gap,
)
from .eigensolver import solve_generalized
from .mesh import constant_weights, generate_disk_mesh
from .svg import line_plot

logger = logging.getLogger(__name__)

ALPHA_GRID = np.linspace(0.0, 1.0, 35)[1:-1]
DELTA_GRID = np.unique(np.concatenate([np.linspace(0.0, 2.0, 9), np.geomspace(2.5, 50.0, 14)]))
FIG3_ALPHA_BAR = 5.0 / 7.0
FEM_LEVEL = 4
COLUMNS = ["geometry", "alpha_bar", "delta", "lambda1_exact", "lambda1_fem", "bound"]


def fem_gap(geometry, alpha_bar, delta, level=FEM_LEVEL, mesh=None):
    """FEM ``lambda_1`` with the constant weights of the semi-analytic model."""
    base = mesh if mesh is not None else generate_disk_mesh(level, geometry)
    m = constant_weights(base, alpha_bar, ball_area(geometry), ball_perimeter(geometry))
    problem = assemble_problem(m, ProblemKind("srbd", delta))
    return float(solve_generalized(problem, 3).eigenvalues[1])


def _rows(geometry, params, level):
    mesh = generate_disk_mesh(level, geometry) if level is not None else None

    def row(p):
        a, d = p
        model = DiskModel(geometry, a, d)
        fem = fem_gap(geometry, a, d, mesh=mesh) if mesh is not None else float("nan")
        return [geometry, a, d, disk_gap(model), fem, bound_curve(model)]

    with ThreadPoolExecutor(max_workers()) as pool:
        return list(pool.map(row, params))


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([v if isinstance(v, str) else f"{v:.12g}" for v in r])


def alpha_sweep(geometry, level=FEM_LEVEL, grid=ALPHA_GRID):
    return _rows(geometry, [(float(a), 0.0) for a in grid], level)


def delta_sweep(level=FEM_LEVEL, grid=DELTA_GRID, alpha_bar=FIG3_ALPHA_BAR):
    return _rows(EUCLIDEAN, [(alpha_bar, float(d)) for d in grid], level)


def reproduce_figures(output_dir, level=FEM_LEVEL):
    """Write fig1/fig2/fig3 as CSV and SVG into ``output_dir``; returns the written paths.

    ``level`` is the FEM refinement for the ``lambda1_fem`` column
    (``None`` skips FEM and leaves the column NaN).
    """
    os.makedirs(output_dir, exist_ok=True)
    paths = []
    titles = {
        EUCLIDEAN: ("fig1", "Euclidean unit disk", "4a/pi^2"),
        HYPERBOLIC: ("fig2", "Hyperbolic unit ball", "a/(pi^2 (cosh 1 - 1)^2)"),
    }
    for geometry, (stem, title, bound_label) in titles.items():
        logger.info("computing %s", stem)
        rows = alpha_sweep(geometry, level)
        csv_path = os.path.join(output_dir, f"{stem}.csv")
        _write_csv(csv_path, COLUMNS, rows)
        a = [r[1] for r in rows]
        svg = line_plot(
            [
                {"label": "spectral gap (exact)", "x": a, "y": [r[3] for r in rows]},
                {"label": f"lower bound {bound_label}", "x": a, "y": [r[5] for r in rows], "dash": "3,4"},
            ],
            f"{title}: sticky reflection", "alpha_bar", "lambda_1",
        )
        svg_path = os.path.join(output_dir, f"{stem}.svg")
        with open(svg_path, "w") as fh:
            fh.write(svg)
        paths += [csv_path, svg_path]

    logger.info("computing fig3")
    rows = delta_sweep(level)
    lam_n = neumann_gap(EUCLIDEAN)
    csv_path = os.path.join(output_dir, "fig3.csv")
    _write_csv(csv_path, COLUMNS + ["lambda1_neumann"], [r + [lam_n] for r in rows])
    d = [r[2] for r in rows]
    svg = line_plot(
        [
            {"label": "spectral gap with boundary diffusion", "x": d, "y": [r[3] for r in rows]},
            {"label": "Neumann gap", "x": [d[0], d[-1]], "y": [lam_n, lam_n], "dash": "8,4"},
        ],
        "Euclidean unit disk, gamma = 5", "delta", "lambda_1",
    )
    svg_path = os.path.join(output_dir, "fig3.svg")
    with open(svg_path, "w") as fh:
        fh.write(svg)
    paths += [csv_path, svg_path]
    return paths
