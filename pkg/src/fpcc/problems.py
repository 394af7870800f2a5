"""Built-in benchmark problems and the manufactured-source oracle.

Each benchmark is registered as a :class:`BenchmarkPreset` bundling the
:class:`~fpcc.operator.ProblemSpec` with run metadata (default
normalization, snapshot times, a known steady state where one exists).
Sources of manufactured problems are analytic closures derived with
:func:`manufactured_source`; the finite-difference fallback of that oracle
is used by the test suite to cross-check every registered source.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .operator import ProblemSpec

__all__ = [
    "BenchmarkPreset",
    "BENCHMARK_IDS",
    "builtin",
    "builtin_preset",
    "manufactured_source",
]

_FD_STEP = 1e-5


def _fd1(f: Callable, x: np.ndarray, step: float) -> np.ndarray:
    return (f(x + step) - f(x - step)) / (2.0 * step)


def _fd2(f: Callable, x: np.ndarray, step: float) -> np.ndarray:
    return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step)


def _richardson(d_h: np.ndarray, d_h2: np.ndarray) -> np.ndarray:
    # Both stencils are second order, so halving the step gains a factor
    # 4 in the leading error term.
    return (4.0 * d_h2 - d_h) / 3.0


def manufactured_source(
    u_exact: Callable[[np.ndarray, float], np.ndarray],
    B: Callable[[np.ndarray, float], np.ndarray],
    C: Callable[[np.ndarray, float], np.ndarray],
    du_dt: Optional[Callable[[np.ndarray, float], np.ndarray]] = None,
    du_dx: Optional[Callable[[np.ndarray, float], np.ndarray]] = None,
    d2u_dx2: Optional[Callable[[np.ndarray, float], np.ndarray]] = None,
    dB_dx: Optional[Callable[[np.ndarray, float], np.ndarray]] = None,
    dC_dx: Optional[Callable[[np.ndarray, float], np.ndarray]] = None,
) -> Callable[[np.ndarray, float], np.ndarray]:
    """Source that makes ``u_exact`` solve ``du/dt = d/dx(B u + C u_x) + g``.

    Expands to ``g = u_t - B_x u - (B + C_x) u_x - C u_xx``.  Analytic
    derivative closures are preferred when supplied; missing ones fall
    back to central differences with step ``1e-5`` sharpened by one
    Richardson extrapolation.
    """

    def g(x: np.ndarray, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if du_dt is not None:
            ut = du_dt(x, t)
        else:
            ut = _richardson(
                (u_exact(x, t + _FD_STEP) - u_exact(x, t - _FD_STEP))
                / (2.0 * _FD_STEP),
                (u_exact(x, t + _FD_STEP / 2) - u_exact(x, t - _FD_STEP / 2))
                / _FD_STEP,
            )
        if du_dx is not None:
            ux = du_dx(x, t)
        else:
            ux = _richardson(
                _fd1(lambda y: u_exact(y, t), x, _FD_STEP),
                _fd1(lambda y: u_exact(y, t), x, _FD_STEP / 2),
            )
        if d2u_dx2 is not None:
            uxx = d2u_dx2(x, t)
        else:
            uxx = _richardson(
                _fd2(lambda y: u_exact(y, t), x, _FD_STEP),
                _fd2(lambda y: u_exact(y, t), x, _FD_STEP / 2),
            )
        if dB_dx is not None:
            bx = dB_dx(x, t)
        else:
            bx = _richardson(
                _fd1(lambda y: B(y, t), x, _FD_STEP),
                _fd1(lambda y: B(y, t), x, _FD_STEP / 2),
            )
        if dC_dx is not None:
            cx = dC_dx(x, t)
        else:
            cx = _richardson(
                _fd1(lambda y: C(y, t), x, _FD_STEP),
                _fd1(lambda y: C(y, t), x, _FD_STEP / 2),
            )
        u = u_exact(x, t)
        return ut - bx * u - (B(x, t) + cx) * ux - C(x, t) * uxx

    return g


@dataclass(frozen=True)
class BenchmarkPreset:
    """A registered benchmark plus its run conventions."""

    name: str
    problem: ProblemSpec
    normalize_default: bool
    snapshot_times: Optional[tuple[float, ...]] = None
    steady_state: Optional[Callable[[np.ndarray], np.ndarray]] = None
    description: str = ""


def _gaussian_centered(x):
    return np.exp(-np.square(x))


def _stationary_ou() -> BenchmarkPreset:
    spec = ProblemSpec.from_drift_diffusion(
        f=lambda x, t: -x,
        sigma=1.0,
        domain=(-6.0, 6.0),
        t_final=0.0,
        u0=lambda x: np.full_like(np.asarray(x, dtype=np.float64), 1.0 / 12.0),
        u_exact=lambda x, t: _gaussian_centered(x),
    )
    return BenchmarkPreset(
        name="stationary_ou",
        problem=spec,
        normalize_default=True,
        steady_state=_gaussian_centered,
        description="Linear-drift equilibrium; exact density exp(-x^2) "
        "up to scale",
    )


def _ou_manufactured() -> BenchmarkPreset:
    def u_exact(x, t):
        return np.exp(-(np.square(x) + t))

    # Analytic oracle result: the flux B u + C u_x of this u_exact is
    # identically zero, so g reduces to the time derivative.
    def g(x, t):
        return -np.exp(-(np.square(x) + t))

    spec = ProblemSpec.from_drift_diffusion(
        f=lambda x, t: -x,
        sigma=1.0,
        domain=(-6.0, 6.0),
        t_final=1.0,
        u0=lambda x: np.exp(-np.square(x)),
        g=g,
        u_exact=u_exact,
    )
    return BenchmarkPreset(
        name="ou_manufactured",
        problem=spec,
        normalize_default=False,
        description="Decaying Gaussian with manufactured source; "
        "space-exact for this discretization",
    )


def _mohammadi_ou() -> BenchmarkPreset:
    a = 10.0

    def u_exact(x, t):
        return np.exp(-(np.square(x - a / 2) + t))

    def g(x, t):
        return (a - x) * (2.0 * x - a) * u_exact(x, t)

    spec = ProblemSpec(
        domain=(0.0, a),
        t_final=1.0,
        B=lambda x, t: np.asarray(x, dtype=np.float64),
        C=lambda x, t: np.ones_like(np.asarray(x, dtype=np.float64)),
        g=g,
        u0=lambda x: np.exp(-np.square(np.asarray(x) - a / 2)),
        u_exact=u_exact,
    )
    return BenchmarkPreset(
        name="mohammadi_ou",
        problem=spec,
        normalize_default=False,
        description="Off-center Gaussian with manufactured source on "
        "[0, 10]; genuine second-order spatial error",
    )


_SIGMA_BIMODAL = 0.4


def _bimodal_steady(x):
    x = np.asarray(x, dtype=np.float64)
    return np.exp(
        (np.square(x) - 0.5 * np.square(np.square(x))) / _SIGMA_BIMODAL**2
    )


def _nonlinear_bimodal() -> BenchmarkPreset:
    spec = ProblemSpec.from_drift_diffusion(
        f=lambda x, t: x - x**3,
        sigma=_SIGMA_BIMODAL,
        domain=(-6.0, 6.0),
        t_final=30.0,
        u0=lambda x: np.exp(-np.square(x)) / math.sqrt(math.pi),
    )
    return BenchmarkPreset(
        name="nonlinear_bimodal",
        problem=spec,
        normalize_default=True,
        snapshot_times=(0.5, 1.0, 3.0, 5.0, 15.0, 30.0),
        steady_state=_bimodal_steady,
        description="Double-well drift x - x^3; density relaxes to a "
        "bimodal equilibrium with peaks near x = +-1",
    )


_REGISTRY: dict[str, Callable[[], BenchmarkPreset]] = {
    "stationary_ou": _stationary_ou,
    "ou_manufactured": _ou_manufactured,
    "mohammadi_ou": _mohammadi_ou,
    "nonlinear_bimodal": _nonlinear_bimodal,
}

BENCHMARK_IDS = tuple(_REGISTRY)


def builtin_preset(name: str) -> BenchmarkPreset:
    """Look up a benchmark preset by id.

    Raises
    ------
    ValueError
        For an unknown id; the message lists the valid ids.
    """
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise ValueError(
            f"unknown benchmark id {name!r}; valid ids: "
            + ", ".join(BENCHMARK_IDS)
        ) from None
    return factory()


def builtin(name: str) -> ProblemSpec:
    """The :class:`ProblemSpec` of a registered benchmark."""
    return builtin_preset(name).problem
