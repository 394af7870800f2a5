"""Tridiagonal direct solve, relaxation sweeps, and residuals.

The loop-carried kernels (Thomas solve, Gauss-Seidel sweep) live in
:mod:`fpcc.kernels` with numba and pure-NumPy lanes; everything here that
numpy can express as array arithmetic stays in numpy.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .operator import TridiagonalSystem

__all__ = [
    "ZeroPivotError",
    "thomas_solve",
    "relax_sweep",
    "relax_sweep_backward",
    "jacobi_sweep",
    "apply_tridiagonal",
    "residual",
]


class ZeroPivotError(ArithmeticError):
    """An exactly-zero pivot occurred during tridiagonal elimination."""

    def __init__(self, index: int):
        self.index = int(index)
        super().__init__(f"zero pivot at row {self.index}")


def thomas_solve(system: TridiagonalSystem) -> np.ndarray:
    """Direct solution of a tridiagonal system (Thomas algorithm).

    Raises
    ------
    ZeroPivotError
        If elimination hits an exactly-zero pivot; ``.index`` is the row.
    """
    x, bad = kernels.thomas(
        np.ascontiguousarray(system.lower, dtype=np.float64),
        np.ascontiguousarray(system.diag, dtype=np.float64),
        np.ascontiguousarray(system.upper, dtype=np.float64),
        np.ascontiguousarray(system.rhs, dtype=np.float64),
    )
    if bad >= 0:
        raise ZeroPivotError(bad)
    return x


def relax_sweep(system: TridiagonalSystem, u: np.ndarray) -> np.ndarray:
    """One forward lexicographic Gauss-Seidel sweep; returns a new vector.

    Raises
    ------
    ValueError
        If any diagonal entry is exactly zero.
    """
    if np.any(system.diag == 0.0):
        j = int(np.argmax(system.diag == 0.0))
        raise ValueError(f"zero diagonal at row {j}")
    return kernels.gauss_seidel(
        np.ascontiguousarray(system.lower, dtype=np.float64),
        np.ascontiguousarray(system.diag, dtype=np.float64),
        np.ascontiguousarray(system.upper, dtype=np.float64),
        np.ascontiguousarray(system.rhs, dtype=np.float64),
        np.ascontiguousarray(u, dtype=np.float64),
    )


def relax_sweep_backward(
    system: TridiagonalSystem, u: np.ndarray
) -> np.ndarray:
    """One backward (right-to-left) Gauss-Seidel sweep; returns a new vector.

    A sweep direction opposed to the local drift smooths poorly, so
    drift-dominated systems pair this with :func:`relax_sweep` to cover
    both directions.

    Raises
    ------
    ValueError
        If any diagonal entry is exactly zero.
    """
    if np.any(system.diag == 0.0):
        j = int(np.argmax(system.diag == 0.0))
        raise ValueError(f"zero diagonal at row {j}")
    return kernels.gauss_seidel_backward(
        np.ascontiguousarray(system.lower, dtype=np.float64),
        np.ascontiguousarray(system.diag, dtype=np.float64),
        np.ascontiguousarray(system.upper, dtype=np.float64),
        np.ascontiguousarray(system.rhs, dtype=np.float64),
        np.ascontiguousarray(u, dtype=np.float64),
    )


def jacobi_sweep(
    system: TridiagonalSystem, u: np.ndarray, weight: float = 2.0 / 3.0
) -> np.ndarray:
    """One damped Jacobi sweep (default damping 2/3); returns a new vector."""
    if np.any(system.diag == 0.0):
        j = int(np.argmax(system.diag == 0.0))
        raise ValueError(f"zero diagonal at row {j}")
    acc = system.rhs.copy()
    acc[1:] -= system.lower * u[:-1]
    acc[:-1] -= system.upper * u[1:]
    return (1.0 - weight) * u + weight * acc / system.diag


def apply_tridiagonal(
    lower: np.ndarray, diag: np.ndarray, upper: np.ndarray, u: np.ndarray
) -> np.ndarray:
    """Matrix-vector product of a tridiagonal matrix."""
    out = diag * u
    out[1:] += lower * u[:-1]
    out[:-1] += upper * u[1:]
    return out


def residual(system: TridiagonalSystem, u: np.ndarray) -> np.ndarray:
    """``rhs - A u`` for the given iterate."""
    return system.rhs - apply_tridiagonal(
        system.lower, system.diag, system.upper, u
    )
