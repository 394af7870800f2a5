"""Implicit time marching and the stationary solve.

Every implicit step (re)assembles the fine and coarse systems with
coefficients frozen at the old time level and the source sampled at the
new one, then solves with the two-grid iteration warm-started from the
previous state.  The second-order scheme takes its first step with the
first-order one to build up history.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .grid import GridHierarchy, StaggeredGrid
from .metrics import ErrorRecord, norms_spacetime, norms_stationary
from .operator import (
    ProblemSpec,
    TridiagonalSystem,
    assemble_step,
    edge_coefficients,
    equilibrium_vector,
    operator_matrix,
)
from .twolevel import CycleConfig, normalize, solve_to_tolerance

__all__ = ["RunReport", "run_bdf1", "run_bdf2", "solve_stationary"]


@dataclass
class RunReport:
    """Everything one run produced.

    ``cycles_per_step``, ``mass_history`` and ``min_value_history`` all
    have ``steps + 1`` entries aligned with time levels ``0..steps``;
    the cycle count of level 0 (the initial state) is 0.  A stationary
    solve has ``steps = 0`` and records its two-grid cycle total in
    ``cycles_per_step[0]``.
    """

    problem: str
    scheme: str
    n_cells: int
    tau: float
    steps: int
    t_final: float
    backend: str = kernels.BACKEND
    normalize: bool = False
    snapshots: list[tuple[float, np.ndarray]] = field(default_factory=list)
    cycles_per_step: list[int] = field(default_factory=list)
    mass_history: list[float] = field(default_factory=list)
    min_value_history: list[float] = field(default_factory=list)
    error_final: Optional[ErrorRecord] = None
    error_spacetime: Optional[ErrorRecord] = None
    scaling_factor: Optional[float] = None
    tg_cycles_max: int = 0
    wall_seconds: float = 0.0

    @property
    def u_final(self) -> np.ndarray:
        """State at the last recorded snapshot (always includes t_final)."""
        return self.snapshots[-1][1]


def _step_count(t_final: float, tau: float) -> int:
    if not tau > 0.0:
        raise ValueError(f"nonpositive tau: {tau!r}")
    ratio = t_final / tau
    steps = int(round(ratio))
    if steps < 1 or abs(ratio - steps) > 1e-8 * max(1.0, abs(ratio)):
        raise ValueError(
            f"nonintegral step count: t_final/tau = {ratio!r}"
        )
    return steps


def _coarse_matrix_assembler(
    problem: ProblemSpec,
    coarse: StaggeredGrid,
    scheme: str,
    tau: Optional[float],
    t_coeff: float,
    pin_singular: bool = False,
) -> Callable[[np.ndarray], TridiagonalSystem]:
    """Assembler mapping a restricted residual to the coarse error system.

    With ``pin_singular`` (stationary operator, zero column sums) the
    restricted residual is projected to zero mean, making the singular
    error equation compatible, and the unknown at the peak of the coarse
    equilibrium is pinned to 0 to select one particular solution.  The
    pin must sit where the null vector is large: pinning a tail cell
    (where the equilibrium underflows) leaves the reduced system nearly
    singular and the correction explodes along the null direction.  The
    cycle's normalization step fixes the remaining mass mode.
    """
    coeffs = edge_coefficients(problem, coarse, t_coeff)
    lower, diag, upper = operator_matrix(coeffs, coarse, scheme, tau)
    pin = -1
    if pin_singular:
        pin = int(np.argmax(equilibrium_vector(coeffs, coarse.h)))
        lower = lower.copy()
        diag = diag.copy()
        upper = upper.copy()
        diag[pin] = 1.0
        if pin > 0:
            lower[pin - 1] = 0.0
        if pin < diag.shape[0] - 1:
            upper[pin] = 0.0

    def assemble(r_coarse: np.ndarray) -> TridiagonalSystem:
        rhs = np.asarray(r_coarse, dtype=np.float64)
        if pin_singular:
            rhs = rhs - rhs.mean()
            rhs[pin] = 0.0
        return TridiagonalSystem(
            lower=lower, diag=diag, upper=upper, rhs=rhs
        )

    return assemble


def _snapshot_steps(
    snapshot_times: Optional[Sequence[float]], tau: float, steps: int
) -> dict[int, float]:
    """Map requested times to the nearest step index (clamped to the run)."""
    table: dict[int, float] = {}
    if snapshot_times is not None:
        for t in snapshot_times:
            idx = int(round(t / tau))
            if 0 <= idx <= steps:
                table[idx] = idx * tau
    table[steps] = steps * tau
    return table


def _march(
    scheme: str,
    problem: ProblemSpec,
    hierarchy: GridHierarchy,
    tau: float,
    cfg: CycleConfig,
    snapshot_times: Optional[Sequence[float]],
    problem_name: str,
) -> RunReport:
    t_start = time.perf_counter()
    fine = hierarchy.fine
    h = fine.h
    x = fine.centers()
    steps = _step_count(problem.t_final, tau)
    snap_at = _snapshot_steps(snapshot_times, tau, steps)

    u = np.asarray(problem.u0(x), dtype=np.float64).copy()
    u_prev2: Optional[np.ndarray] = None

    report = RunReport(
        problem=problem_name,
        scheme=scheme,
        n_cells=fine.n_cells,
        tau=tau,
        steps=steps,
        t_final=problem.t_final,
        normalize=cfg.normalize,
    )
    report.cycles_per_step.append(0)
    report.mass_history.append(h * float(np.sum(u)))
    report.min_value_history.append(float(np.min(u)))

    errors: Optional[list[np.ndarray]] = None
    if problem.u_exact is not None:
        errors = [u - np.asarray(problem.u_exact(x, 0.0), dtype=np.float64)]
    if 0 in snap_at:
        report.snapshots.append((0.0, u.copy()))

    for m in range(1, steps + 1):
        t_old = (m - 1) * tau
        t_new = m * tau
        step_scheme = scheme
        if scheme == "bdf2" and m == 1:
            step_scheme = "bdf1"
        coeffs = edge_coefficients(problem, fine, t_old)
        g_next = np.asarray(problem.g(x, t_new), dtype=np.float64)
        system = assemble_step(
            coeffs,
            fine,
            step_scheme,
            tau=tau,
            u_prev=u,
            u_prev2=u_prev2,
            g_next=g_next,
        )
        coarse_assemble = _coarse_matrix_assembler(
            problem, hierarchy.coarse, step_scheme, tau, t_old
        )
        u_new, cycles = solve_to_tolerance(
            system, coarse_assemble, hierarchy, u, cfg
        )
        u_prev2 = u
        u = u_new

        report.cycles_per_step.append(cycles)
        report.mass_history.append(h * float(np.sum(u)))
        report.min_value_history.append(float(np.min(u)))
        if errors is not None:
            errors.append(
                u - np.asarray(problem.u_exact(x, t_new), dtype=np.float64)
            )
        if m in snap_at:
            report.snapshots.append((snap_at[m], u.copy()))

    if errors is not None:
        report.error_spacetime = norms_spacetime(errors, h, tau)
        report.error_final = norms_stationary(errors[-1], h)
    report.tg_cycles_max = max(report.cycles_per_step)
    report.wall_seconds = time.perf_counter() - t_start
    return report


def run_bdf1(
    problem: ProblemSpec,
    hierarchy: GridHierarchy,
    tau: float,
    cfg: CycleConfig,
    snapshot_times: Optional[Sequence[float]] = None,
    problem_name: str = "custom",
) -> RunReport:
    """March to ``problem.t_final`` with first-order backward steps.

    ``problem.t_final / tau`` must be a whole number of steps (within
    1e-8 relative).
    """
    return _march(
        "bdf1", problem, hierarchy, tau, cfg, snapshot_times, problem_name
    )


def run_bdf2(
    problem: ProblemSpec,
    hierarchy: GridHierarchy,
    tau: float,
    cfg: CycleConfig,
    snapshot_times: Optional[Sequence[float]] = None,
    problem_name: str = "custom",
) -> RunReport:
    """March with second-order backward steps (first step first-order)."""
    return _march(
        "bdf2", problem, hierarchy, tau, cfg, snapshot_times, problem_name
    )


def solve_stationary(
    problem: ProblemSpec,
    hierarchy: GridHierarchy,
    cfg: CycleConfig,
    problem_name: str = "custom",
) -> RunReport:
    """Solve ``dF(u)/h = -g`` with the two-grid iteration.

    The stationary operator fixes the density only up to scale, so the
    iteration requires ``cfg.normalize = True`` and returns the unit-mass
    equilibrium.  When ``problem.u_exact`` is available, the error record
    compares against it after rescaling the computed density so both have
    the same discrete L1 norm; the factor is stored in
    ``scaling_factor``.
    """
    if not cfg.normalize:
        raise ValueError(
            "stationary solve requires cfg.normalize=True "
            "(the operator is singular up to scaling)"
        )
    t_start = time.perf_counter()
    fine = hierarchy.fine
    h = fine.h
    x = fine.centers()
    u0 = normalize(np.asarray(problem.u0(x), dtype=np.float64), h)
    coeffs = edge_coefficients(problem, fine, 0.0)
    g0 = np.asarray(problem.g(x, 0.0), dtype=np.float64)
    system = assemble_step(coeffs, fine, "stationary", g_next=g0)
    coarse_assemble = _coarse_matrix_assembler(
        problem, hierarchy.coarse, "stationary", None, 0.0, pin_singular=True
    )
    u, cycles = solve_to_tolerance(
        system, coarse_assemble, hierarchy, u0, cfg
    )
    u = normalize(u, h)

    report = RunReport(
        problem=problem_name,
        scheme="stationary",
        n_cells=fine.n_cells,
        tau=0.0,
        steps=0,
        t_final=0.0,
        normalize=True,
        snapshots=[(0.0, u.copy())],
        cycles_per_step=[cycles],
        mass_history=[h * float(np.sum(u))],
        min_value_history=[float(np.min(u))],
        tg_cycles_max=cycles,
    )
    if problem.u_exact is not None:
        u_ref = np.asarray(problem.u_exact(x, 0.0), dtype=np.float64)
        scale = float(np.sum(np.abs(u_ref)) / np.sum(np.abs(u)))
        report.scaling_factor = scale
        report.error_final = norms_stationary(scale * u - u_ref, h)
    report.wall_seconds = time.perf_counter() - t_start
    return report
