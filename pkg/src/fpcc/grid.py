"""Staggered grids and the nested factor-three hierarchy.

A grid over ``[x_left, x_right]`` with ``N`` cells stores unknowns at cell
centers and fluxes at cell edges:

* edges ``x_{i}``, ``i = 0..N``, with ``edge(0) = x_left`` and
  ``edge(N) = x_right`` exactly,
* centers ``x_{i-1/2}``, ``i = 1..N``, midway between consecutive edges.

Coordinates come from affine formulas, never cumulative addition, so a
coarse grid with ``N/3`` cells aligns exactly with its fine grid: coarse
edge ``I`` coincides with fine edge ``3I`` and coarse center ``I`` with
fine center ``3I - 1`` (1-based).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["StaggeredGrid", "GridHierarchy", "make_grid", "make_hierarchy"]


@dataclass(frozen=True)
class StaggeredGrid:
    """Uniform cell-centered grid with edge-indexed flux points."""

    x_left: float
    x_right: float
    n_cells: int
    h: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "h", (self.x_right - self.x_left) / self.n_cells
        )

    def edge(self, i: int) -> float:
        """Coordinate of edge ``i`` for ``i in 0..n_cells``."""
        # (1-t)*a + t*b is exact at t=0 and t=1, unlike a + i*h.
        t = i / self.n_cells
        return (1.0 - t) * self.x_left + t * self.x_right

    def center(self, i: int) -> float:
        """Coordinate of cell center ``i`` for ``i in 1..n_cells``."""
        s = (2 * i - 1) / (2.0 * self.n_cells)
        return (1.0 - s) * self.x_left + s * self.x_right

    def edges(self) -> np.ndarray:
        """All ``n_cells + 1`` edge coordinates."""
        t = np.arange(self.n_cells + 1, dtype=np.float64) / self.n_cells
        return (1.0 - t) * self.x_left + t * self.x_right

    def centers(self) -> np.ndarray:
        """All ``n_cells`` cell-center coordinates."""
        s = (2.0 * np.arange(1, self.n_cells + 1, dtype=np.float64) - 1.0) / (
            2.0 * self.n_cells
        )
        return (1.0 - s) * self.x_left + s * self.x_right


@dataclass(frozen=True)
class GridHierarchy:
    """A fine grid and the nested coarse grid with one third the cells."""

    fine: StaggeredGrid
    coarse: StaggeredGrid


def make_grid(x_left: float, x_right: float, n_cells: int) -> StaggeredGrid:
    """Build a uniform staggered grid.

    Raises
    ------
    ValueError
        If ``x_left >= x_right``, the bounds are not finite, or
        ``n_cells < 3``.
    """
    if not (np.isfinite(x_left) and np.isfinite(x_right)):
        raise ValueError("invalid domain: bounds must be finite")
    if not x_left < x_right:
        raise ValueError(
            f"invalid domain: need x_left < x_right, got [{x_left}, {x_right}]"
        )
    if n_cells < 3:
        raise ValueError(f"too few cells: need n_cells >= 3, got {n_cells}")
    return StaggeredGrid(float(x_left), float(x_right), int(n_cells))


def make_hierarchy(fine: StaggeredGrid) -> GridHierarchy:
    """Pair ``fine`` with its factor-three coarsening.

    Raises
    ------
    ValueError
        If ``fine.n_cells`` is not divisible by 3 or the coarse grid would
        have fewer than 3 cells.
    """
    if fine.n_cells % 3 != 0:
        raise ValueError(
            f"n_cells not divisible by three: {fine.n_cells}"
        )
    n_coarse = fine.n_cells // 3
    if n_coarse < 3:
        raise ValueError(
            f"coarse grid too small: {n_coarse} cells (need >= 3)"
        )
    coarse = StaggeredGrid(fine.x_left, fine.x_right, n_coarse)
    return GridHierarchy(fine=fine, coarse=coarse)
