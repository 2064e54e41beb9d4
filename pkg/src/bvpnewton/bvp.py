"""Finite-difference discretization of ``y'' = f(x, y, y')`` with Dirichlet
boundary values, and the Newton driver built on it.

On a uniform mesh with spacing ``h`` the unknowns are the interior values
``w_1 .. w_{N-1}``; the boundary values are substituted into the first and
last equations.  Equation ``i`` reads::

    2 w_i - w_{i-1} - w_{i+1} + h^2 f(x_i, w_i, (w_{i+1} - w_{i-1}) / (2h)) = 0

Right-hand sides (and their optional partials) are called with NumPy arrays
and must broadcast.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BvpNewtonError, InvalidInterval, NonFiniteEvaluation
from .linalg import Tridiagonal
from .newton import NewtonConfig, NewtonReport, newton_solve

#: step for centered differences of ``f`` when analytic partials are missing
PARTIAL_FD_STEP = 1e-6

GUESS_STRATEGIES = ("constant-average", "linear")


@dataclass(frozen=True)
class Mesh:
    a: float
    b: float
    n_sub: int
    h: float
    nodes: np.ndarray

    @property
    def interior(self):
        return self.nodes[1:-1]


@dataclass(frozen=True)
class BoundaryConditions:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise ValueError(f"boundary values must be finite, got {self.alpha}, {self.beta}")


@dataclass(frozen=True)
class BvpProblem:
    """``y'' = rhs(x, y, yp)`` on ``domain`` with ``y(a) = bc.alpha``, ``y(b) = bc.beta``."""

    domain: tuple
    bc: BoundaryConditions
    rhs: Callable
    rhs_dy: Optional[Callable] = None
    rhs_dyp: Optional[Callable] = None
    exact: Optional[Callable] = None


@dataclass
class BvpReport:
    mesh: Mesh
    newton: NewtonReport
    solution: np.ndarray
    max_error_vs_exact: Optional[float] = None

    @property
    def converged(self):
        return self.newton.converged

    def full_iterates(self):
        """Every Newton iterate with the boundary values attached, shape ``(k+1, N+1)``."""
        alpha, beta = self.solution[0], self.solution[-1]
        return np.array([np.concatenate(([alpha], w, [beta])) for w in self.newton.iterates])


def make_mesh(a, b, n_sub):
    """Uniform mesh ``x_i = a + i*h`` with ``h = (b - a) / n_sub``."""
    if int(n_sub) != n_sub or n_sub < 1:
        raise InvalidInterval(f"n_sub must be a positive integer, got {n_sub}")
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise InvalidInterval(f"need finite a < b, got a={a}, b={b}")
    n_sub = int(n_sub)
    h = (b - a) / n_sub
    nodes = a + np.arange(n_sub + 1) * h
    nodes[0], nodes[-1] = a, b
    nodes.setflags(write=False)
    return Mesh(float(a), float(b), n_sub, h, nodes)


def initial_guess(mesh, bc, strategy="constant-average"):
    if mesh.n_sub < 2:
        raise InvalidInterval("at least two subintervals are needed for an interior unknown")
    if strategy == "constant-average":
        return np.full(mesh.n_sub - 1, (bc.alpha + bc.beta) / 2)
    if strategy == "linear":
        t = (mesh.interior - mesh.a) / (mesh.b - mesh.a)
        return bc.alpha + (bc.beta - bc.alpha) * t
    raise ValueError(f"unknown guess strategy {strategy!r}; choose from {GUESS_STRATEGIES}")


def _stencil(problem, mesh, w):
    w = np.asarray(w, dtype=float)
    if w.shape != (mesh.n_sub - 1,):
        raise ValueError(f"expected {mesh.n_sub - 1} interior values, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise NonFiniteEvaluation("interior values contain NaN or infinite entries")
    full = np.concatenate(([problem.bc.alpha], w, [problem.bc.beta]))
    slope = (full[2:] - full[:-2]) / (2 * mesh.h)
    return full, slope


def _call(fn, x, y, yp, what):
    out = np.broadcast_to(np.asarray(fn(x, y, yp), dtype=float), x.shape)
    if not np.all(np.isfinite(out)):
        bad = int(np.flatnonzero(~np.isfinite(out))[0])
        raise NonFiniteEvaluation(f"{what} is not finite at x = {x[bad]!r}")
    return out


def assemble_residual(problem, mesh, w):
    full, slope = _stencil(problem, mesh, w)
    f = _call(problem.rhs, mesh.interior, full[1:-1], slope, "rhs")
    return 2 * full[1:-1] - full[:-2] - full[2:] + mesh.h**2 * f


def rhs_partials(problem, x, y, yp):
    """``(df/dy, df/dyp)``, analytic when supplied, else centered differences."""
    eps = PARTIAL_FD_STEP
    if problem.rhs_dy is not None:
        fy = _call(problem.rhs_dy, x, y, yp, "df/dy")
    else:
        fy = (_call(problem.rhs, x, y + eps, yp, "rhs")
              - _call(problem.rhs, x, y - eps, yp, "rhs")) / (2 * eps)
    if problem.rhs_dyp is not None:
        fyp = _call(problem.rhs_dyp, x, y, yp, "df/dyp")
    else:
        fyp = (_call(problem.rhs, x, y, yp + eps, "rhs")
               - _call(problem.rhs, x, y, yp - eps, "rhs")) / (2 * eps)
    return fy, fyp


def assemble_jacobian(problem, mesh, w):
    """Tridiagonal Jacobian of :func:`assemble_residual` with respect to ``w``."""
    full, slope = _stencil(problem, mesh, w)
    fy, fyp = rhs_partials(problem, mesh.interior, full[1:-1], slope)
    h = mesh.h
    lower = -1 - (h / 2) * fyp
    upper = -1 + (h / 2) * fyp
    return Tridiagonal(lower[1:], 2 + h * h * fy, upper[:-1])


def solve_bvp(problem, mesh, config=None, guess="constant-average", numeric_jacobian=False):
    """Discretize and solve with Newton's method.

    ``guess`` is a strategy name or an explicit array of interior values.
    With ``numeric_jacobian=True`` the Newton loop builds its own
    forward-difference Jacobian instead of the analytic tridiagonal one.
    """
    if isinstance(guess, str):
        w0 = initial_guess(mesh, problem.bc, guess)
    else:
        w0 = np.asarray(guess, dtype=float)

    def residual(w):
        return assemble_residual(problem, mesh, w)

    def jacobian(w):
        return assemble_jacobian(problem, mesh, w)

    report = newton_solve(residual, w0, None if numeric_jacobian else jacobian, config)
    solution = np.concatenate(([problem.bc.alpha], report.final_x, [problem.bc.beta]))
    max_err = None
    if problem.exact is not None:
        ref = np.asarray(problem.exact(mesh.nodes), dtype=float)
        max_err = float(np.max(np.abs(solution - ref)))
    return BvpReport(mesh, report, solution, max_err)


@dataclass
class StudyRow:
    n_sub: int
    h: float
    max_error: Optional[float]
    iterations: Optional[int] = None
    error: Optional[str] = None


@dataclass
class ConvergenceStudy:
    rows: list
    order: Optional[float]
    note: str = ""
    pairwise_orders: list = field(default_factory=list)


# Errors at or below this level are rounding noise; no order is fitted.
_EXACT_FLOOR = 1e-11


def fit_order(hs, errors):
    """Least-squares slope of ``log(error)`` against ``log(h)``."""
    lh, le = np.log(np.asarray(hs, dtype=float)), np.log(np.asarray(errors, dtype=float))
    slope, _ = np.polyfit(lh, le, 1)
    return float(slope)


def convergence_study(problem, n_subs, config=None, guess="constant-average", workers=None):
    """Solve on each resolution and fit the observed order of accuracy.

    Per-resolution failures are recorded in the row rather than raised.
    ``workers > 1`` solves resolutions concurrently; row order follows
    ``n_subs`` regardless.
    """
    if problem.exact is None:
        raise ValueError("convergence study needs a problem with an exact solution")
    n_subs = [int(n) for n in n_subs]
    if not n_subs:
        raise ValueError("at least one resolution is required")
    if any(n < 2 for n in n_subs) or any(b <= a for a, b in zip(n_subs, n_subs[1:])):
        raise ValueError(f"resolutions must be strictly increasing and >= 2, got {n_subs}")
    a, b = problem.domain

    def run(n):
        mesh = make_mesh(a, b, n)
        try:
            rep = solve_bvp(problem, mesh, config, guess)
        except BvpNewtonError as exc:
            return StudyRow(n, mesh.h, None, error=f"{exc.code}: {exc}")
        if not rep.converged:
            return StudyRow(n, mesh.h, rep.max_error_vs_exact, rep.newton.iterations_used,
                            error="NOT_CONVERGED")
        return StudyRow(n, mesh.h, rep.max_error_vs_exact, rep.newton.iterations_used)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, n_subs))
    else:
        rows = [run(n) for n in n_subs]

    good = [r for r in rows if r.error is None]
    hs = [r.h for r in good]
    errs = [r.max_error for r in good]
    pairwise = []
    for r0, r1 in zip(good, good[1:]):
        if r0.max_error > _EXACT_FLOOR and r1.max_error > _EXACT_FLOOR:
            pairwise.append(float(np.log(r0.max_error / r1.max_error) / np.log(r0.h / r1.h)))
        else:
            pairwise.append(None)
    if len(good) < 2:
        return ConvergenceStudy(rows, None, "fewer than two successful resolutions",
                                pairwise)
    if max(errs) <= _EXACT_FLOOR:
        return ConvergenceStudy(rows, None, "errors at rounding level; scheme is exact here",
                                pairwise)
    if min(errs) <= _EXACT_FLOOR:
        return ConvergenceStudy(rows, None, "some errors at rounding level", pairwise)
    return ConvergenceStudy(rows, fit_order(hs, errs), "least-squares fit", pairwise)
