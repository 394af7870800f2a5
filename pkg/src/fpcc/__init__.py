"""Conservative 1D Fokker-Planck solver with two-grid acceleration.

The package discretizes ``du/dt = d/dx(B u + C du/dx) + g`` on an interval
with zero-flux boundaries using exponentially fitted conservative fluxes
on a staggered grid, steps implicitly with first- or second-order backward
differences, and solves each step with a two-grid cycle built on
factor-three coarsening.
"""

from .grid import GridHierarchy, StaggeredGrid, make_grid, make_hierarchy
from .kernels import BACKEND
from .linalg import (
    ZeroPivotError,
    apply_tridiagonal,
    jacobi_sweep,
    relax_sweep,
    relax_sweep_backward,
    residual,
    thomas_solve,
)
from .metrics import (
    ErrorRecord,
    convergence_order,
    norms_spacetime,
    norms_stationary,
)
from .operator import (
    EdgeCoefficients,
    ProblemSpec,
    TridiagonalSystem,
    assemble_step,
    cc_delta,
    delta_from_omega,
    edge_coefficients,
    equilibrium_vector,
    flux,
    operator_matrix,
)
from .problems import (
    BENCHMARK_IDS,
    BenchmarkPreset,
    builtin,
    builtin_preset,
    manufactured_source,
)
from .timeloop import RunReport, run_bdf1, run_bdf2, solve_stationary
from .transfer import (
    prolong_quadratic,
    restrict_flux_injection,
    restrict_injection,
)
from .twolevel import (
    CycleConfig,
    NoConvergenceError,
    normalize,
    solve_to_tolerance,
    tg_cycle,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BENCHMARK_IDS",
    "BenchmarkPreset",
    "CycleConfig",
    "EdgeCoefficients",
    "ErrorRecord",
    "GridHierarchy",
    "NoConvergenceError",
    "ProblemSpec",
    "RunReport",
    "StaggeredGrid",
    "TridiagonalSystem",
    "ZeroPivotError",
    "apply_tridiagonal",
    "assemble_step",
    "builtin",
    "builtin_preset",
    "cc_delta",
    "convergence_order",
    "delta_from_omega",
    "edge_coefficients",
    "equilibrium_vector",
    "flux",
    "jacobi_sweep",
    "make_grid",
    "make_hierarchy",
    "manufactured_source",
    "norms_spacetime",
    "norms_stationary",
    "normalize",
    "operator_matrix",
    "prolong_quadratic",
    "relax_sweep",
    "relax_sweep_backward",
    "residual",
    "restrict_flux_injection",
    "restrict_injection",
    "run_bdf1",
    "run_bdf2",
    "solve_stationary",
    "solve_to_tolerance",
    "tg_cycle",
    "thomas_solve",
    "__version__",
]
