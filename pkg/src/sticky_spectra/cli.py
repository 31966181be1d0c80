"""Command line interface: ``sticky-spectra <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

import argparse
import json
import logging
import sys
from importlib import resources

from . import cheeger
from .assembly import AssemblyError, ProblemKind, assemble_problem
from .disk import DiskError, DiskModel, bound_curve, disk_gap, neumann_gap
from .eigensolver import EigenSolverError, solve_generalized
from .mesh import (
    MeshError,
    generate_disk_mesh,
    generate_dumbbell_mesh,
    generate_fan_mesh,
    load_mesh,
    normalize_weights,
    random_weights,
    save_mesh,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

logger = logging.getLogger("sticky_spectra")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def bundled_fixture():
    """Path-like handle of the bundled 14-triangle disk fixture."""
    return resources.files("sticky_spectra") / "data" / "disk14.json"


def _load(path):
    if path is None:
        with resources.as_file(bundled_fixture()) as p:
            return load_mesh(str(p))
    return load_mesh(path)


def _weights(mesh, args):
    if getattr(args, "seed", None) is not None:
        return random_weights(mesh, args.seed)
    return normalize_weights(mesh)


def cmd_mesh(args):
    if args.mesh_command == "gen-disk":
        mesh = generate_disk_mesh(args.level, args.geometry)
    elif args.mesh_command == "gen-fan":
        mesh = generate_fan_mesh(args.sides, args.geometry)
    else:
        mesh = generate_dumbbell_mesh(args.radius, args.width, args.length, args.level)
    mesh = _weights(mesh, args)
    save_mesh(mesh, args.out)
    print(f"wrote {args.out}: {mesh.n_vertices} vertices, {mesh.n_triangles} triangles, hash {mesh.hash}")
    return EXIT_OK


def cmd_solve(args):
    mesh = _load(args.mesh)
    kind = ProblemKind.parse(args.kind, args.delta)
    problem = assemble_problem(mesh, kind, lumped=args.lumped)
    res = solve_generalized(problem, min(args.count, problem.size), tol=args.tol)
    if args.json:
        print(res.to_json())
    else:
        print(f"{kind.label} on {mesh.hash} ({res.method}, {problem.size} dofs)")
        for k, (lam, r) in enumerate(zip(res.eigenvalues, res.residuals)):
            print(f"  lambda_{k} = {lam:.10f}   residual {r:.1e}")
    return EXIT_OK


def cmd_cheeger(args):
    mesh = _load(args.mesh)
    if args.method == "brute-force":
        rep = cheeger.brute_force_constant(mesh, args.kind, args.variant, args.delta)
    else:
        cand = cheeger.sr_candidates(mesh)
        rep = cheeger.sweep_upper_bound(mesh, cand, args.kind, args.variant, args.delta)
    print(rep.to_json())
    return EXIT_OK


def cmd_verify(args):
    from .report import verify_all

    mesh = _load(args.mesh)
    if args.seed is not None:
        mesh = random_weights(mesh, args.seed)
    report = verify_all(mesh, args.delta, args.brute_force, mesh_id=args.mesh or "bundled:disk14")
    print(report.summary())
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_disk(args):
    model = DiskModel(args.geometry, args.alpha, args.delta)
    out = {
        "geometry": model.geometry,
        "alpha_bar": model.alpha_bar,
        "delta": model.delta,
        "gamma": model.gamma,
        "lambda1": disk_gap(model),
        "bound": bound_curve(model),
        "lambda1_neumann": neumann_gap(model.geometry),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_figures(args):
    from .figures import reproduce_figures

    level = None if args.no_fem else args.level
    for p in reproduce_figures(args.out, level):
        print(p)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="sticky-spectra", description="Sticky-reflection spectra and Cheeger-type bounds.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    mp = sub.add_parser("mesh", help="generate meshes")
    msub = mp.add_subparsers(dest="mesh_command", required=True, parser_class=_Parser)
    g = msub.add_parser("gen-disk")
    g.add_argument("--level", type=int, default=3)
    g.add_argument("--geometry", choices=["euclidean", "hyperbolic"], default="euclidean")
    f = msub.add_parser("gen-fan")
    f.add_argument("--sides", type=int, default=14)
    f.add_argument("--geometry", choices=["euclidean", "hyperbolic"], default="euclidean")
    d = msub.add_parser("gen-dumbbell")
    d.add_argument("--radius", type=float, default=1.0)
    d.add_argument("--width", type=float, default=0.2)
    d.add_argument("--length", type=float, default=1.0)
    d.add_argument("--level", type=int, default=3)
    for q in (g, f, d):
        q.add_argument("--seed", type=int, default=None, help="random positive weights")
        q.add_argument("--out", required=True)
    mp.set_defaults(func=cmd_mesh)

    s = sub.add_parser("solve", help="smallest eigenpairs of one problem kind")
    s.add_argument("--mesh", required=True)
    s.add_argument("--kind", default="sr", help="sr, srbd[:delta], neumann, dirichlet, steklov")
    s.add_argument("--delta", type=float, default=None)
    s.add_argument("--count", type=int, default=4)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--lumped", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("cheeger", help="one Cheeger-type constant")
    c.add_argument("--mesh", default=None)
    c.add_argument("--kind", choices=[k.value for k in cheeger.ConstantKind], default="hc")
    c.add_argument("--variant", choices=[v.value for v in cheeger.RestrictionVariant], default="combined")
    c.add_argument("--method", choices=["brute-force", "sweep"], default="brute-force")
    c.add_argument("--delta", type=float, default=1.0)
    c.set_defaults(func=cmd_cheeger)

    v = sub.add_parser("verify", help="ordering and bound checks")
    v.add_argument("--mesh", default=None, help="mesh JSON (default: bundled 14-triangle disk)")
    v.add_argument("--brute-force", action="store_true")
    v.add_argument("--delta", type=float, default=1.0)
    v.add_argument("--seed", type=int, default=None, help="replace weights by random positive ones")
    v.add_argument("--json", default=None, help="write the report as JSON")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("disk", help="semi-analytic disk spectral gap")
    k.add_argument("--geometry", choices=["euclidean", "hyperbolic"], default="euclidean")
    k.add_argument("--alpha", type=float, required=True, help="alpha_bar in (0, 1)")
    k.add_argument("--delta", type=float, default=0.0)
    k.set_defaults(func=cmd_disk)

    fg = sub.add_parser("figures", help="write fig1-3 CSV and SVG files")
    fg.add_argument("--out", required=True)
    fg.add_argument("--level", type=int, default=4, help="FEM refinement for the lambda1_fem column")
    fg.add_argument("--no-fem", action="store_true")
    fg.set_defaults(func=cmd_figures)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"sticky-spectra: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except (MeshError, AssemblyError, cheeger.CheegerError, json.JSONDecodeError, KeyError) as exc:
        print(f"sticky-spectra: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EigenSolverError, DiskError) as exc:
        print(f"sticky-spectra: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"sticky-spectra: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
