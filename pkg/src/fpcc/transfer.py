"""Grid transfer operators for the nested factor-three hierarchy.

Cell correspondence (1-based): coarse cell ``I`` sits on top of fine cells
``3I-2, 3I-1, 3I`` and its center coincides with fine center ``3I-1``, so
restriction is straight injection from the middle fine cell of each
triple.  Prolongation evaluates, at each fine center, the quadratic
Lagrange polynomial through the three nearest coarse centers; on the
uniform grid the weights reduce to constants per offset class.  Fine cells
whose parent is the first (last) coarse cell use the first (last) three
coarse centers one-sidedly.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "restrict_injection",
    "prolong_quadratic",
    "restrict_flux_injection",
]


def _require_triple(n_fine: int) -> int:
    if n_fine % 3 != 0 or n_fine < 9:
        raise ValueError(
            f"fine vector length must be 3m with m >= 3, got {n_fine}"
        )
    return n_fine // 3


def restrict_injection(fine: np.ndarray) -> np.ndarray:
    """Coarse cell values by injection from aligned fine centers."""
    _require_triple(fine.shape[0])
    return fine[1::3].copy()


def prolong_quadratic(coarse: np.ndarray) -> np.ndarray:
    """Quadratic interpolation of coarse cell values to the fine grid.

    Exact for polynomials of degree <= 2 sampled at cell centers, and an
    exact right inverse of :func:`restrict_injection` (the aligned fine
    centers copy their coarse value).
    """
    m = coarse.shape[0]
    if m < 3:
        raise ValueError(f"coarse vector needs at least 3 cells, got {m}")
    fine = np.empty(3 * m, dtype=np.float64)

    c_prev = coarse[:-2]
    c_mid = coarse[1:-1]
    c_next = coarse[2:]
    # Interior parents: fine centers sit at -h, 0, +h around the parent
    # center; Lagrange nodes at -3h, 0, +3h.
    fine[3:-3:3] = (2.0 * c_prev + 8.0 * c_mid - c_next) / 9.0
    fine[4:-2:3] = c_mid
    fine[5:-1:3] = (-c_prev + 8.0 * c_mid + 2.0 * c_next) / 9.0
    # One-sided ends: nodes at the first/last three coarse centers.
    fine[0] = (14.0 * coarse[0] - 7.0 * coarse[1] + 2.0 * coarse[2]) / 9.0
    fine[1] = coarse[0]
    fine[2] = (5.0 * coarse[0] + 5.0 * coarse[1] - coarse[2]) / 9.0
    fine[-3] = (-coarse[-3] + 5.0 * coarse[-2] + 5.0 * coarse[-1]) / 9.0
    fine[-2] = coarse[-1]
    fine[-1] = (2.0 * coarse[-3] - 7.0 * coarse[-2] + 14.0 * coarse[-1]) / 9.0
    return fine


def restrict_flux_injection(fine_edges: np.ndarray) -> np.ndarray:
    """Edge-value injection: coarse edge ``I`` is fine edge ``3I``.

    The two-grid cycle corrects cell values only and never restricts
    fluxes; this is kept for diagnostics of edge-aligned quantities.
    """
    n = fine_edges.shape[0] - 1
    if n % 3 != 0 or n < 9:
        raise ValueError(
            f"edge vector length must be 3m + 1 with m >= 3, got {n + 1}"
        )
    return fine_edges[::3].copy()
