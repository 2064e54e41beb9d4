"""Command-line front end: ``bvpnewton solve | study | list``.

Exit codes: 0 success, 2 bad configuration or expression, 3 Newton did not
converge, 4 singular Jacobian or non-finite evaluation.  Every failure prints
one ``bvpnewton: error[CODE]: message`` line on stderr.
"""

import argparse
import csv
import json
import logging
import os
import sys

import numpy as np

from . import expr, problems
from .bvp import GUESS_STRATEGIES, BoundaryConditions, BvpProblem, convergence_study, make_mesh, solve_bvp
from .errors import (BvpNewtonError, DomainError, InvalidInterval, NonFiniteEvaluation,
                     ParseError, SingularMatrix, UnknownProblem)
from .newton import NewtonConfig

log = logging.getLogger("bvpnewton")

EXIT_OK, EXIT_CONFIG, EXIT_NOT_CONVERGED, EXIT_NUMERIC = 0, 2, 3, 4

GRAMMAR_HELP = """\
expression grammar (for --rhs / --exact):
  numbers, variables x y yp (--exact: x only), + - * / ^, parentheses,
  sin cos exp log sqrt abs.  ^ is right-associative and binds tighter than
  unary minus (-2^2 = -4); no implicit multiplication (write 2*x).
"""


class ConfigError(BvpNewtonError):
    code = "CONFIG"


def _fmt(v):
    return format(float(v), ".6g")


def _fail(code, message, status):
    print(f"bvpnewton: error[{code}]: {message}", file=sys.stderr)
    return status


def _problem_args(p):
    g = p.add_argument_group("problem selection (built-in name or inline definition)")
    g.add_argument("--problem", help="built-in problem name (see `list`)")
    g.add_argument("--rhs", help="inline f(x, y, yp) for y'' = f")
    g.add_argument("--exact", help="inline exact solution y(x), optional")
    g.add_argument("--a", type=float, help="left endpoint")
    g.add_argument("--b", type=float, help="right endpoint")
    g.add_argument("--alpha", type=float, help="y(a)")
    g.add_argument("--beta", type=float, help="y(b)")


def _solver_args(p):
    p.add_argument("--tol", type=float, default=1e-8, help="stop when max|dw| <= tol (default 1e-8)")
    p.add_argument("--maxit", type=int, default=50)
    p.add_argument("--guess", choices=GUESS_STRATEGIES, default="constant-average")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bvpnewton",
        description="Solve y'' = f(x, y, y') with Dirichlet values by finite differences + Newton.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve one problem and write iteration/solution files",
                        epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _problem_args(ps)
    ps.add_argument("--n", type=int, default=20, help="number of subintervals (default 20)")
    ps.add_argument("--plot", action="store_true", help="also write solution.svg")
    _solver_args(ps)

    pt = sub.add_parser("study", help="mesh-refinement study against the exact solution",
                        epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _problem_args(pt)
    pt.add_argument("--n", default="20,40,80,160", help="comma-separated subinterval counts")
    pt.add_argument("--workers", type=int, default=1)
    _solver_args(pt)

    pl = sub.add_parser("list", help="list built-in problems")
    pl.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def resolve_problem(args):
    """Return ``(problem, label)`` from either ``--problem`` or the inline flags."""
    inline = [args.rhs, args.a, args.b, args.alpha, args.beta]
    if args.problem is not None:
        if any(v is not None for v in inline) or args.exact is not None:
            raise ConfigError("give either --problem or an inline definition, not both")
        return problems.get_problem(args.problem), args.problem
    if any(v is None for v in inline):
        raise ConfigError("inline problems need --rhs, --a, --b, --alpha and --beta "
                          "(or use --problem NAME)")
    if not args.a < args.b:
        raise InvalidInterval(f"need a < b, got a={args.a}, b={args.b}")
    rhs = expr.compile_rhs(expr.parse(args.rhs))
    exact = expr.compile_exact(expr.parse(args.exact, ("x",))) if args.exact else None
    problem = BvpProblem((args.a, args.b), BoundaryConditions(args.alpha, args.beta), rhs,
                         exact=exact)
    return problem, "inline"


def _config(args):
    try:
        return NewtonConfig(tol=args.tol, maxit=args.maxit)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def write_iteration_table(path, report, fmt="csv"):
    table = report.full_iterates()
    nodes = report.mesh.nodes
    if fmt == "json":
        data = {
            "x": [float(v) for v in nodes],
            "iterates": [[float(v) for v in col] for col in table],
            "update_norms": report.newton.update_norms,
        }
        with open(path, "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "i"] + [f"w{k}" for k in range(len(table))])
        for i, x in enumerate(nodes):
            w.writerow([_fmt(x), i] + [_fmt(col[i]) for col in table])


def write_solution(path, report, fmt="csv"):
    nodes, sol = report.mesh.nodes, report.solution
    if fmt == "json":
        with open(path, "w") as fh:
            json.dump({"x": [float(v) for v in nodes], "w": [float(v) for v in sol]}, fh, indent=1)
            fh.write("\n")
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "w"])
        for x, v in zip(nodes, sol):
            w.writerow([_fmt(x), _fmt(v)])


def write_svg(path, x, y, width=480, height=320, pad=48):
    """Single polyline with axes and min/max tick labels."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    y0, y1 = float(y.min()), float(y.max())
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1
    x0, x1 = float(x[0]), float(x[-1])
    px = pad + (x - x0) / (x1 - x0) * (width - 2 * pad)
    py = height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)
    pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
    dots = "".join(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="2"/>' for a, b in zip(px, py))
    bottom, right = height - pad, width - pad
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="11">\n'
        f'<line x1="{pad}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>\n'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{bottom}" stroke="black"/>\n'
        f'<text x="{pad}" y="{bottom + 16}" text-anchor="middle">{_fmt(x0)}</text>\n'
        f'<text x="{right}" y="{bottom + 16}" text-anchor="middle">{_fmt(x1)}</text>\n'
        f'<text x="{pad - 4}" y="{bottom}" text-anchor="end">{_fmt(y0)}</text>\n'
        f'<text x="{pad - 4}" y="{pad + 4}" text-anchor="end">{_fmt(y1)}</text>\n'
        f'<text x="{width / 2}" y="{height - 8}" text-anchor="middle">x</text>\n'
        f'<text x="14" y="{height / 2}" text-anchor="middle">w</text>\n'
        f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{pts}"/>\n'
        f'<g fill="steelblue">{dots}</g>\n'
        "</svg>\n"
    )
    with open(path, "w") as fh:
        fh.write(svg)


def cmd_solve(args):
    problem, label = resolve_problem(args)
    a, b = problem.domain
    mesh = make_mesh(a, b, args.n)
    report = solve_bvp(problem, mesh, _config(args), args.guess)

    os.makedirs(args.out, exist_ok=True)
    ext = args.format
    write_iteration_table(os.path.join(args.out, f"iterations.{ext}"), report, ext)
    write_solution(os.path.join(args.out, f"solution.{ext}"), report, ext)
    if args.plot:
        write_svg(os.path.join(args.out, "solution.svg"), mesh.nodes, report.solution)

    nr = report.newton
    print(f"problem: {label}  n_sub: {mesh.n_sub}  h: {_fmt(mesh.h)}")
    print(f"converged: {nr.converged}  iterations: {nr.iterations_used}  "
          f"final update: {nr.update_norms[-1]:.3e}  final residual: {nr.final_residual_norm:.3e}")
    if report.max_error_vs_exact is not None:
        print(f"max error vs exact: {report.max_error_vs_exact:.6e}")
    if not nr.converged:
        return _fail("NOT_CONVERGED",
                     f"Newton did not converge in {nr.iterations_used} iterations "
                     f"(last update {nr.update_norms[-1]:.3e})", EXIT_NOT_CONVERGED)
    return EXIT_OK


def _parse_resolutions(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"--n must be a comma-separated list of integers, got {text!r}") from None


def cmd_study(args):
    problem, label = resolve_problem(args)
    if problem.exact is None:
        raise ConfigError(f"problem {label!r} has no exact solution; a study needs one")
    n_subs = _parse_resolutions(args.n)
    try:
        study = convergence_study(problem, n_subs, _config(args), args.guess, args.workers)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    os.makedirs(args.out, exist_ok=True)
    order_txt = "undefined" if study.order is None else f"{study.order:.4f}"
    local = [None] + study.pairwise_orders
    if args.format == "json":
        data = {
            "rows": [{"n": r.n_sub, "h": r.h, "max_error": r.max_error, "error": r.error,
                      "local_order": lo} for r, lo in zip(study.rows, local)],
            "order": study.order,
            "note": study.note,
        }
        with open(os.path.join(args.out, "study.json"), "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
    else:
        with open(os.path.join(args.out, "study.csv"), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "h", "max_error", "local_order", "observed_order"])
            for r, lo in zip(study.rows, local):
                err = "" if r.max_error is None else format(r.max_error, ".6e")
                w.writerow([r.n_sub, _fmt(r.h), err, "" if lo is None else f"{lo:.4f}", order_txt])

    for r in study.rows:
        status = r.error or "ok"
        err = "-" if r.max_error is None else f"{r.max_error:.6e}"
        print(f"n={r.n_sub:<6d} h={_fmt(r.h):<10s} max_error={err:<14s} {status}")
    print(f"observed order: {order_txt} ({study.note})")

    failed = [r for r in study.rows if r.error]
    if failed:
        r = failed[0]
        status = EXIT_NOT_CONVERGED if r.error == "NOT_CONVERGED" else EXIT_NUMERIC
        return _fail(r.error.split(":")[0], f"resolution n={r.n_sub} failed: {r.error}", status)
    return EXIT_OK


def cmd_list(args):
    entries = list(problems.REGISTRY.values())
    if args.json:
        print(json.dumps([
            {"name": e.name, "domain": list(e.problem.domain),
             "alpha": e.problem.bc.alpha, "beta": e.problem.bc.beta,
             "provenance": e.provenance, "has_exact": e.problem.exact is not None,
             "rhs": e.rhs_text, "description": e.description}
            for e in entries
        ], indent=1))
        return EXIT_OK
    for e in entries:
        a, b = e.problem.domain
        print(f"{e.name:<15s} [{_fmt(a)}, {_fmt(b)}]  {e.provenance:<8s} {e.description}")
    return EXIT_OK


_COMMANDS = {"solve": cmd_solve, "study": cmd_study, "list": cmd_list}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ParseError, UnknownProblem, InvalidInterval) as exc:
        return _fail(exc.code, str(exc), EXIT_CONFIG)
    except (SingularMatrix, NonFiniteEvaluation, DomainError) as exc:
        return _fail(exc.code, str(exc), EXIT_NUMERIC)
    except OSError as exc:
        return _fail("IO", str(exc), EXIT_CONFIG)


if __name__ == "__main__":
    sys.exit(main())
