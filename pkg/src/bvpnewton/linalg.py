"""Dense and tridiagonal solves for the Newton step ``J @ dx = -F``.

Vectors are 1-D float arrays and dense matrices are 2-D float arrays.  The
banded Jacobian of the finite-difference system is carried by
:class:`Tridiagonal`.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NonFiniteEvaluation, SingularMatrix

#: relative pivot breakdown threshold
PIVOT_RTOL = 1e-14


def as_vector(values, name="vector"):
    """Return ``values`` as a finite, non-empty 1-D float array."""
    v = np.array(values, dtype=float).reshape(-1)
    if v.size == 0:
        raise ValueError(f"{name} must have at least one entry")
    if not np.all(np.isfinite(v)):
        raise NonFiniteEvaluation(f"{name} contains NaN or infinite entries")
    return v


@dataclass(frozen=True)
class Tridiagonal:
    """Square tridiagonal matrix stored by bands.

    ``sub[i]`` sits at ``(i + 1, i)``, ``diag[i]`` at ``(i, i)`` and
    ``sup[i]`` at ``(i, i + 1)``.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray

    def __post_init__(self):
        diag = as_vector(self.diag, "diag")
        n = diag.size
        sub = np.array(self.sub, dtype=float).reshape(-1)
        sup = np.array(self.sup, dtype=float).reshape(-1)
        if sub.size != n - 1 or sup.size != n - 1:
            raise ValueError(
                f"band lengths {sub.size}/{n}/{sup.size} inconsistent with order {n}"
            )
        if not (np.all(np.isfinite(sub)) and np.all(np.isfinite(sup))):
            raise NonFiniteEvaluation("tridiagonal bands contain NaN or infinite entries")
        for name, arr in (("sub", sub), ("diag", diag), ("sup", sup)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def order(self):
        return self.diag.size

    @classmethod
    def from_dense(cls, a):
        a = np.asarray(a, dtype=float)
        return cls(np.diag(a, -1), np.diag(a), np.diag(a, 1))

    def to_dense(self):
        n = self.order
        a = np.zeros((n, n))
        idx = np.arange(n)
        a[idx, idx] = self.diag
        a[idx[1:], idx[:-1]] = self.sub
        a[idx[:-1], idx[1:]] = self.sup
        return a

    def matvec(self, x):
        x = np.asarray(x, dtype=float)
        y = self.diag * x
        y[1:] += self.sub * x[:-1]
        y[:-1] += self.sup * x[1:]
        return y

    __matmul__ = matvec

    def max_abs(self):
        return max(
            float(np.max(np.abs(self.diag))),
            float(np.max(np.abs(self.sub), initial=0.0)),
            float(np.max(np.abs(self.sup), initial=0.0)),
        )


def _threshold(scale):
    return PIVOT_RTOL * scale


def _finite_solution(x):
    if not np.all(np.isfinite(x)):
        raise NonFiniteEvaluation("solution overflowed")
    return x


def dense_solve(a, b):
    """Solve ``a @ x = b`` by Gaussian elimination with partial pivoting.

    Raises
    ------
    SingularMatrix
        If a pivot's magnitude drops below ``1e-14`` times the largest
        absolute entry of ``a``.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    b = as_vector(b, "right-hand side")
    if b.size != a.shape[0]:
        raise ValueError(f"right-hand side has length {b.size}, expected {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteEvaluation("matrix contains NaN or infinite entries")
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        raise SingularMatrix("matrix is identically zero", 0)
    with np.errstate(over="ignore", invalid="ignore"):
        x, info = _kernels.gauss(a, b, _threshold(scale))
    if info >= 0:
        raise SingularMatrix(f"matrix is singular to working precision (pivot {info})", info)
    return _finite_solution(x)


def thomas_solve(t, b):
    """Solve the tridiagonal system ``t @ x = b`` in O(n) without pivoting.

    A vanishing pivot raises :class:`SingularMatrix` even when the matrix is
    nonsingular; callers that cannot rule this out should fall back to
    :func:`dense_solve` on ``t.to_dense()``.
    """
    b = as_vector(b, "right-hand side")
    if b.size != t.order:
        raise ValueError(f"right-hand side has length {b.size}, expected {t.order}")
    scale = t.max_abs()
    if scale == 0.0:
        raise SingularMatrix("matrix is identically zero", 0)
    with np.errstate(over="ignore", invalid="ignore"):
        x, info = _kernels.thomas(t.sub, t.diag, t.sup, b, _threshold(scale))
    if info >= 0:
        raise SingularMatrix(f"zero pivot in tridiagonal elimination (row {info})", info)
    return _finite_solution(x)


def solve(matrix, b):
    """Dispatch on matrix type; tridiagonal breakdown retries densely once."""
    if isinstance(matrix, Tridiagonal):
        try:
            return thomas_solve(matrix, b)
        except SingularMatrix:
            return dense_solve(matrix.to_dense(), b)
    return dense_solve(matrix, b)
