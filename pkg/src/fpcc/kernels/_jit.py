"""Numba-compiled solver kernels.

Same algorithms and statement order as ``_reference``; no fastmath, so
results match the reference lane bit for bit.
"""

from __future__ import annotations

import numba as nb
import numpy as np

_numba_setting = {"nogil": True, "cache": True}


@nb.njit(**_numba_setting)
def thomas(lower, diag, upper, rhs):
    n = diag.shape[0]
    c = np.zeros(n, dtype=np.float64)
    d = np.zeros(n, dtype=np.float64)
    x = np.zeros(n, dtype=np.float64)
    piv = diag[0]
    if piv == 0.0:
        return x, 0
    c[0] = upper[0] / piv if n > 1 else 0.0
    d[0] = rhs[0] / piv
    for i in range(1, n):
        piv = diag[i] - lower[i - 1] * c[i - 1]
        if piv == 0.0:
            return x, i
        if i < n - 1:
            c[i] = upper[i] / piv
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / piv
    x[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x, -1


@nb.njit(**_numba_setting)
def gauss_seidel(lower, diag, upper, rhs, u):
    n = diag.shape[0]
    out = u.copy()
    for i in range(n):
        acc = rhs[i]
        if i > 0:
            acc = acc - lower[i - 1] * out[i - 1]
        if i < n - 1:
            acc = acc - upper[i] * out[i + 1]
        out[i] = acc / diag[i]
    return out


@nb.njit(**_numba_setting)
def gauss_seidel_backward(lower, diag, upper, rhs, u):
    n = diag.shape[0]
    out = u.copy()
    for i in range(n - 1, -1, -1):
        acc = rhs[i]
        if i > 0:
            acc = acc - lower[i - 1] * out[i - 1]
        if i < n - 1:
            acc = acc - upper[i] * out[i + 1]
        out[i] = acc / diag[i]
    return out
