"""Error norms and convergence-order estimation.

Two norm conventions are reported side by side:

* ``*_std`` are the standard discrete norms: ``l1_std = h sum|e|`` and
  ``l2_std = sqrt(h sum e^2)`` for a cell vector, with an extra ``tau``
  weight under the square root / sum for space-time records.
* ``*_paper`` reproduce the scaled convention of the solver's reference
  tables: ``l1_paper = h sum|e|`` and ``l2_paper = h^2 sum e^2`` for a
  stationary record, and ``l1_paper = h^2 tau sumsum|e|``,
  ``l2_paper = tau h^2 sumsum e^2`` accumulated over all time levels for
  a space-time record.  Note ``l2_paper`` is quadratic in the error
  (``l2_paper = h * l2_std**2`` in the stationary case), not a norm in
  the usual sense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "ErrorRecord",
    "norms_stationary",
    "norms_spacetime",
    "convergence_order",
]


@dataclass(frozen=True)
class ErrorRecord:
    """Error norms of one run; ``n_steps = 0`` marks a stationary record."""

    n_cells: int
    n_steps: int
    l1_paper: float
    l2_paper: float
    l1_std: float
    l2_std: float
    linf: float


def norms_stationary(e: np.ndarray, h: float) -> ErrorRecord:
    """Norms of a single cell-vector error."""
    e = np.asarray(e, dtype=np.float64)
    abs_sum = float(np.sum(np.abs(e)))
    sq_sum = float(np.dot(e, e))
    return ErrorRecord(
        n_cells=e.shape[0],
        n_steps=0,
        l1_paper=h * abs_sum,
        l2_paper=h * h * sq_sum,
        l1_std=h * abs_sum,
        l2_std=math.sqrt(h * sq_sum),
        linf=float(np.max(np.abs(e))) if e.size else 0.0,
    )


def norms_spacetime(
    errors_per_step: Sequence[np.ndarray], h: float, tau: float
) -> ErrorRecord:
    """Norms accumulated over the error vectors of every time level."""
    if len(errors_per_step) == 0:
        raise ValueError("errors_per_step must not be empty")
    abs_sum = 0.0
    sq_sum = 0.0
    linf = 0.0
    n_cells = np.asarray(errors_per_step[0]).shape[0]
    for e in errors_per_step:
        e = np.asarray(e, dtype=np.float64)
        abs_sum += float(np.sum(np.abs(e)))
        sq_sum += float(np.dot(e, e))
        linf = max(linf, float(np.max(np.abs(e))) if e.size else 0.0)
    return ErrorRecord(
        n_cells=n_cells,
        n_steps=len(errors_per_step) - 1,
        l1_paper=h * h * tau * abs_sum,
        l2_paper=tau * h * h * sq_sum,
        l1_std=h * tau * abs_sum,
        l2_std=math.sqrt(h * tau * sq_sum),
        linf=linf,
    )


def convergence_order(errors: Sequence[float], factor: float) -> float:
    """Least-squares slope of ``log(error)`` against ``log(h)``.

    ``errors[i]`` is assumed to belong to a mesh width ``h0 / factor**i``.
    Two entries reduce to ``log(e0/e1) / log(factor)``; constant errors
    give 0.

    Raises
    ------
    ValueError
        If fewer than two errors are given, any error is not positive,
        or ``factor <= 1``.
    """
    if len(errors) < 2:
        raise ValueError("need at least two errors to fit an order")
    if not factor > 1.0:
        raise ValueError(f"refinement factor must exceed 1, got {factor}")
    e = np.asarray(errors, dtype=np.float64)
    if np.any(e <= 0.0) or not np.all(np.isfinite(e)):
        raise ValueError("errors must be positive and finite")
    x = -np.arange(e.shape[0], dtype=np.float64) * math.log(factor)
    y = np.log(e)
    x = x - x.mean()
    return float(np.dot(x, y - y.mean()) / np.dot(x, x))
