"""Elimination kernels behind :mod:`bvpnewton.linalg`.

Two implementations of each kernel exist: scalar loops compiled with
``numba.njit`` and a pure NumPy/Python path.  The active pair is chosen once at
import time.  Set ``BVPNEWTON_DISABLE_NUMBA=1`` (or run without numba
installed) to force the NumPy path.

Kernels never raise; they return ``(x, info)`` where ``info`` is ``-1`` on
success or the index of the first pivot that fell below ``threshold``.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

_DISABLE_FLAG = "BVPNEWTON_DISABLE_NUMBA"


def _flag_set(name):
    return os.environ.get(name, "").strip().lower() not in ("", "0", "false", "no")


HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _flag_set(_DISABLE_FLAG)


# ---------------------------------------------------------------- loop kernels
# Written in the numba-compatible subset; also valid (slow) plain Python.

def _thomas_loops(sub, diag, sup, rhs, threshold):
    n = diag.shape[0]
    c = np.empty(n)
    d = np.empty(n)
    x = np.empty(n)
    beta = diag[0]
    if abs(beta) < threshold:
        return x, 0
    c[0] = sup[0] / beta if n > 1 else 0.0
    d[0] = rhs[0] / beta
    for i in range(1, n):
        beta = diag[i] - sub[i - 1] * c[i - 1]
        if abs(beta) < threshold:
            return x, i
        if i < n - 1:
            c[i] = sup[i] / beta
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / beta
    x[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x, -1


def _gauss_loops(a, b, threshold):
    n = a.shape[0]
    m = a.copy()
    x = b.copy()
    for k in range(n):
        p = k
        big = abs(m[k, k])
        for r in range(k + 1, n):
            v = abs(m[r, k])
            if v > big:
                big = v
                p = r
        if big < threshold:
            return x, k
        if p != k:
            for j in range(k, n):
                tmp = m[k, j]
                m[k, j] = m[p, j]
                m[p, j] = tmp
            tmp = x[k]
            x[k] = x[p]
            x[p] = tmp
        for r in range(k + 1, n):
            f = m[r, k] / m[k, k]
            if f != 0.0:
                for j in range(k + 1, n):
                    m[r, j] -= f * m[k, j]
                x[r] -= f * x[k]
    for k in range(n - 1, -1, -1):
        s = x[k]
        for j in range(k + 1, n):
            s -= m[k, j] * x[j]
        x[k] = s / m[k, k]
    return x, -1


# --------------------------------------------------------------- numpy kernels

def thomas_numpy(sub, diag, sup, rhs, threshold):
    # Python floats beat ndarray element access for a sequential sweep.
    a = sub.tolist()
    b = diag.tolist()
    c = sup.tolist()
    d = rhs.tolist()
    n = len(b)
    cp = [0.0] * n
    dp = [0.0] * n
    beta = b[0]
    if abs(beta) < threshold:
        return np.empty(n), 0
    cp[0] = c[0] / beta if n > 1 else 0.0
    dp[0] = d[0] / beta
    for i in range(1, n):
        beta = b[i] - a[i - 1] * cp[i - 1]
        if abs(beta) < threshold:
            return np.empty(n), i
        if i < n - 1:
            cp[i] = c[i] / beta
        dp[i] = (d[i] - a[i - 1] * dp[i - 1]) / beta
    x = dp
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return np.array(x), -1


def gauss_numpy(a, b, threshold):
    m = np.array(a, dtype=float)
    x = np.array(b, dtype=float)
    n = m.shape[0]
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if abs(m[p, k]) < threshold:
            return x, k
        if p != k:
            m[[k, p], k:] = m[[p, k], k:]
            x[[k, p]] = x[[p, k]]
        f = m[k + 1:, k] / m[k, k]
        m[k + 1:, k:] -= np.outer(f, m[k, k:])
        x[k + 1:] -= f * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - m[k, k + 1:] @ x[k + 1:]) / m[k, k]
    return x, -1


if HAVE_NUMBA:
    thomas_numba = numba.njit(cache=True)(_thomas_loops)
    gauss_numba = numba.njit(cache=True)(_gauss_loops)
else:  # pragma: no cover
    thomas_numba = gauss_numba = None

BACKENDS = {"numpy": (thomas_numpy, gauss_numpy)}
if HAVE_NUMBA:
    BACKENDS["numba"] = (thomas_numba, gauss_numba)

BACKEND = "numba" if USE_NUMBA else "numpy"
thomas, gauss = BACKENDS[BACKEND]
