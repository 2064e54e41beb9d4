"""Nonlinear two-point boundary value problems by finite differences and Newton's method."""

from ._kernels import BACKEND
from .bvp import (BoundaryConditions, BvpProblem, BvpReport, ConvergenceStudy, Mesh,
                  assemble_jacobian, assemble_residual, convergence_study, initial_guess,
                  make_mesh, solve_bvp)
from .errors import (BvpNewtonError, DomainError, InvalidInterval, NonFiniteEvaluation,
                     ParseError, SingularJacobian, SingularMatrix, UnknownProblem)
from .expr import Env, evaluate, parse
from .linalg import Tridiagonal, dense_solve, thomas_solve
from .newton import NewtonConfig, NewtonReport, fd_jacobian, newton_solve
from .problems import get_problem

__version__ = "0.1.0"
