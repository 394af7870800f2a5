"""Pure-NumPy reference implementations of the sequential solver kernels.

These are the fallback lane used when numba is unavailable or disabled via
``FPCC_DISABLE_NUMBA``.  The arithmetic is statement-for-statement identical
to the jitted lane in ``_jit``, so the two backends produce bit-identical
results on the same inputs.
"""

from __future__ import annotations

import numpy as np


def thomas(lower, diag, upper, rhs):
    """Solve a tridiagonal system by the Thomas algorithm.

    Parameters
    ----------
    lower : ndarray, shape (n-1,)
        Subdiagonal (coefficient of x[i-1] in row i).
    diag : ndarray, shape (n,)
        Main diagonal.
    upper : ndarray, shape (n-1,)
        Superdiagonal (coefficient of x[i+1] in row i).
    rhs : ndarray, shape (n,)
        Right-hand side.

    Returns
    -------
    x : ndarray, shape (n,)
        Solution vector.  Contents are unspecified if a zero pivot occurs.
    pivot_index : int
        -1 on success, else the row index of the first exactly-zero pivot.
    """
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


def gauss_seidel(lower, diag, upper, rhs, u):
    """One forward (lexicographic) Gauss-Seidel sweep.

    Returns a new array; ``u`` is not modified.
    """
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


def gauss_seidel_backward(lower, diag, upper, rhs, u):
    """One backward (right-to-left) Gauss-Seidel sweep.

    Returns a new array; ``u`` is not modified.
    """
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
