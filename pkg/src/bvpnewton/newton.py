"""Newton's method for square nonlinear systems ``F(x) = 0``.

The iteration follows the classic textbook loop: build the Jacobian (from a
user callback, or by forward differences when none is given), solve
``J @ dx = -F(x)``, step, and stop once the max-norm of the step is at most
``tol``.  The iteration also stops when the residual at the new iterate is at
most ``ftol``, which lets affine systems finish after their single exact step.
Running out of iterations is not an error: the report comes back with
``converged=False`` and the last iterate.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import NonFiniteEvaluation, SingularJacobian, SingularMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-8
    maxit: int = 50
    fd_step: float = 1e-6
    ftol: float = 1e-12

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if int(self.maxit) != self.maxit or self.maxit < 1:
            raise ValueError(f"maxit must be a positive integer, got {self.maxit}")
        if not 0 < self.fd_step < 1:
            raise ValueError(f"fd_step must lie in (0, 1), got {self.fd_step}")
        if not self.ftol >= 0:
            raise ValueError(f"ftol must be non-negative, got {self.ftol}")


@dataclass
class NewtonReport:
    """Outcome and full history of one Newton run.

    ``iterates`` holds ``x0, x1, ...`` (one more entry than
    ``iterations_used``).  ``update_norms[k]`` is ``max|x_{k+1} - x_k|`` and
    ``residual_norms[k]`` is ``max|F(x_k)|``.
    """

    converged: bool
    iterations_used: int
    final_x: np.ndarray
    iterates: list = field(default_factory=list)
    update_norms: list = field(default_factory=list)
    residual_norms: list = field(default_factory=list)
    final_residual_norm: float = float("nan")
    stop_reason: str = ""


def _evaluate(fun, x, n, what):
    fx = np.asarray(fun(x), dtype=float).reshape(-1)
    if fx.size != n:
        raise ValueError(f"{what} returned {fx.size} values for {n} unknowns")
    if not np.all(np.isfinite(fx)):
        raise NonFiniteEvaluation(f"{what} is not finite")
    return fx


def fd_jacobian(fun, x, step=1e-6, f0=None):
    """Forward-difference Jacobian; column ``j`` is ``(F(x + step*e_j) - F(x)) / step``."""
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    x = linalg.as_vector(x, "x")
    n = x.size
    f0 = _evaluate(fun, x, n, "F(x)") if f0 is None else f0
    jac = np.empty((f0.size, n))
    for j in range(n):
        xp = x.copy()
        xp[j] += step
        jac[:, j] = (_evaluate(fun, xp, f0.size, f"F(x + step*e_{j})") - f0) / step
    return jac


def newton_solve(fun, x0, jac=None, config=None):
    """Solve ``fun(x) = 0`` from ``x0``.

    Parameters
    ----------
    fun : callable
        Maps a length-n array to a length-n array.
    x0 : array_like
        Starting guess.
    jac : callable, optional
        Returns the Jacobian at ``x`` as a 2-D array or a
        :class:`~bvpnewton.linalg.Tridiagonal`.  Forward differences with
        ``config.fd_step`` are used when omitted.
    config : NewtonConfig, optional

    Returns
    -------
    NewtonReport

    Raises
    ------
    SingularJacobian
        The linear solve broke down; ``.iteration`` is 1-based.
    NonFiniteEvaluation
        ``fun`` or an iterate became NaN/inf (typically divergence).
    """
    cfg = config or NewtonConfig()
    x = linalg.as_vector(x0, "x0")
    n = x.size
    fx = _evaluate(fun, x, n, "F(x0)")

    iterates = [x]
    updates, residuals = [], []
    converged, reason = False, "maxit"
    for it in range(1, cfg.maxit + 1):
        if jac is None:
            jmat = fd_jacobian(fun, x, cfg.fd_step, f0=fx)
        else:
            jmat = jac(x)
        try:
            dx = linalg.solve(jmat, -fx)
        except SingularMatrix as exc:
            raise SingularJacobian(
                f"singular Jacobian at iteration {it}: {exc}", it, exc.pivot_index
            ) from exc
        x_new = x + dx
        if not np.all(np.isfinite(x_new)):
            raise NonFiniteEvaluation(f"iterate {it} is not finite (divergence)")
        err = float(np.max(np.abs(x_new - x)))
        residuals.append(float(np.max(np.abs(fx))))
        updates.append(err)
        iterates.append(x_new)
        try:
            fx = _evaluate(fun, x_new, n, f"F(x{it})")
        except NonFiniteEvaluation as exc:
            raise NonFiniteEvaluation(f"{exc} at iteration {it} (divergence)") from exc
        log.debug("newton it=%d update=%.3e residual=%.3e", it, err, residuals[-1])
        x = x_new
        if err <= cfg.tol:
            converged, reason = True, "update"
            break
        if float(np.max(np.abs(fx))) <= cfg.ftol:
            converged, reason = True, "residual"
            break

    return NewtonReport(
        converged=converged,
        iterations_used=len(updates),
        final_x=x,
        iterates=iterates,
        update_norms=updates,
        residual_norms=residuals,
        final_residual_norm=float(np.max(np.abs(fx))),
        stop_reason=reason,
    )
