"""Built-in benchmark problems, addressable by stable names from the CLI.

``paper-eq1`` and ``paper-system5`` are the two sign readings of the worked
example ``y'' = (32 + 2x^3 -/+ y y') / 8`` on ``[1, 3]`` with ``y(1) = 17``
and ``y(3) = 14.333333``.  The minus variant has the closed form
``y = x^2 + 16/x``; the plus variant is the one whose discretization matches
the printed nonlinear system and iteration table.  The closed form is
checkable by substitution: ``y'' = 2 + 32/x^3`` equals the minus-variant
right-hand side.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bvp import BoundaryConditions, BvpProblem
from .errors import UnknownProblem


@dataclass(frozen=True)
class ProblemEntry:
    name: str
    problem: BvpProblem
    description: str
    provenance: str  # "paper" or "control"
    rhs_text: Optional[str] = None
    exact_text: Optional[str] = None


def _paper_eq1():
    # beta = 43/3 (= y(3) of the closed form); agrees with 14.333333 to the printed digits
    return BvpProblem(
        domain=(1.0, 3.0),
        bc=BoundaryConditions(17.0, 43.0 / 3.0),
        rhs=lambda x, y, yp: (32 + 2 * x**3 - y * yp) / 8,
        rhs_dy=lambda x, y, yp: -yp / 8,
        rhs_dyp=lambda x, y, yp: -y / 8,
        exact=lambda x: x**2 + 16 / x,
    )


def _paper_system5():
    return BvpProblem(
        domain=(1.0, 3.0),
        bc=BoundaryConditions(17.0, 14.333333),
        rhs=lambda x, y, yp: (32 + 2 * x**3 + y * yp) / 8,
        rhs_dy=lambda x, y, yp: yp / 8,
        rhs_dyp=lambda x, y, yp: y / 8,
    )


def _linear_zero():
    return BvpProblem(
        domain=(0.0, 1.0),
        bc=BoundaryConditions(0.0, 1.0),
        rhs=lambda x, y, yp: np.zeros_like(x),
        rhs_dy=lambda x, y, yp: np.zeros_like(x),
        rhs_dyp=lambda x, y, yp: np.zeros_like(x),
        exact=lambda x: np.asarray(x, dtype=float),
    )


def _quadratic():
    return BvpProblem(
        domain=(0.0, 1.0),
        bc=BoundaryConditions(0.0, 1.0),
        rhs=lambda x, y, yp: np.full_like(x, 2.0),
        rhs_dy=lambda x, y, yp: np.zeros_like(x),
        rhs_dyp=lambda x, y, yp: np.zeros_like(x),
        exact=lambda x: np.asarray(x, dtype=float) ** 2,
    )


REGISTRY = {
    e.name: e
    for e in (
        ProblemEntry(
            "paper-eq1",
            _paper_eq1(),
            "y'' = (32 + 2x^3 - y*y')/8 on [1, 3], y(1) = 17, y(3) = 14.333333; "
            "equation as printed in the worked example (cf. Burden & Faires, "
            "Numerical Analysis, nonlinear finite differences); closed form y = x^2 + 16/x",
            "paper",
            "(1/8)*(32 + 2*x^3 - y*yp)",
            "x^2 + 16/x",
        ),
        ProblemEntry(
            "paper-system5",
            _paper_system5(),
            "y'' = (32 + 2x^3 + y*y')/8 on [1, 3], y(1) = 17, y(3) = 14.333333; "
            "sign variant whose discretization is the printed 19-equation system "
            "and whose Newton iterates form the published iteration table",
            "paper",
            "(1/8)*(32 + 2*x^3 + y*yp)",
        ),
        ProblemEntry(
            "linear-zero",
            _linear_zero(),
            "y'' = 0 on [0, 1], y(0) = 0, y(1) = 1; exact y = x",
            "control",
            "0",
            "x",
        ),
        ProblemEntry(
            "quadratic",
            _quadratic(),
            "y'' = 2 on [0, 1], y(0) = 0, y(1) = 1; exact y = x^2",
            "control",
            "2",
            "x^2",
        ),
    )
}


def get_entry(name):
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownProblem(
            f"unknown problem {name!r}; available: {', '.join(sorted(REGISTRY))}"
        ) from None


def get_problem(name):
    return get_entry(name).problem


def names():
    return list(REGISTRY)
