"""Benchmark registry and the manufactured-source oracle.

The key check: every registered analytic source term is rederived from
the problem's exact solution with the finite-difference fallback of
manufactured_source and must agree pointwise.  That catches sign or term
errors in the hand-derived closures.
"""

import numpy as np
import pytest

from fpcc import (
    BENCHMARK_IDS,
    builtin,
    builtin_preset,
    make_grid,
    manufactured_source,
)


def test_registry_ids():
    assert BENCHMARK_IDS == (
        "stationary_ou",
        "ou_manufactured",
        "mohammadi_ou",
        "nonlinear_bimodal",
    )


def test_unknown_id_lists_valid_ones():
    with pytest.raises(ValueError, match="unknown benchmark id") as e:
        builtin_preset("heat")
    for name in BENCHMARK_IDS:
        assert name in str(e.value)


def test_preset_metadata():
    assert builtin_preset("stationary_ou").normalize_default is True
    assert builtin_preset("ou_manufactured").normalize_default is False
    assert builtin_preset("mohammadi_ou").normalize_default is False
    bimodal = builtin_preset("nonlinear_bimodal")
    assert bimodal.normalize_default is True
    assert bimodal.snapshot_times == (0.5, 1.0, 3.0, 5.0, 15.0, 30.0)
    for name in BENCHMARK_IDS:
        assert builtin_preset(name).description


def test_domains_and_horizons():
    assert builtin("stationary_ou").domain == (-6.0, 6.0)
    assert builtin("stationary_ou").t_final == 0.0
    assert builtin("ou_manufactured").t_final == 1.0
    assert builtin("mohammadi_ou").domain == (0.0, 10.0)
    assert builtin("nonlinear_bimodal").t_final == 30.0


def test_stationary_ou_fields():
    spec = builtin("stationary_ou")
    x = np.linspace(-6.0, 6.0, 7)
    # f = -x maps to B = x; C = sigma^2/2 = 1/2
    np.testing.assert_array_equal(spec.B(x, 0.0), x)
    np.testing.assert_array_equal(spec.C(x, 0.0), np.full(7, 0.5))
    np.testing.assert_array_equal(spec.g(x, 0.0), np.zeros(7))
    # exact equilibrium ratio: u(0)/u(1) = e
    assert spec.u_exact(np.array([0.0]), 0.0)[0] \
        / spec.u_exact(np.array([1.0]), 0.0)[0] == pytest.approx(np.e)


def test_mohammadi_fields():
    spec = builtin("mohammadi_ou")
    x = np.linspace(0.0, 10.0, 11)
    np.testing.assert_array_equal(spec.B(x, 0.0), x)
    np.testing.assert_array_equal(spec.C(x, 0.0), np.ones(11))
    # g vanishes where either factor does: x = a and x = a/2
    g = spec.g(np.array([10.0, 5.0]), 0.0)
    np.testing.assert_allclose(g, [0.0, 0.0], atol=1e-30)


def test_bimodal_equilibrium_peaks():
    preset = builtin_preset("nonlinear_bimodal")
    x = np.linspace(-2.0, 2.0, 4001)
    u = preset.steady_state(x)
    peak = np.max(u)
    assert u[np.argmin(np.abs(x - 1.0))] == pytest.approx(peak, rel=1e-9)
    assert u[np.argmin(np.abs(x + 1.0))] == pytest.approx(peak, rel=1e-9)
    np.testing.assert_allclose(u, u[::-1], rtol=1e-12)


@pytest.mark.parametrize("name", ["ou_manufactured", "mohammadi_ou"])
def test_registered_source_matches_fd_oracle(name):
    # rebuild g from u_exact with the finite-difference fallback and
    # compare against the registered analytic closure over the space-time
    # sample box
    spec = builtin(name)
    g_oracle = manufactured_source(spec.u_exact, spec.B, spec.C)
    x = make_grid(spec.domain[0], spec.domain[1], 500).centers()
    for t in (0.0, 0.3, 1.0):
        np.testing.assert_allclose(
            spec.g(x, t), g_oracle(x, t), atol=1e-9,
        )


@pytest.mark.parametrize("name", ["stationary_ou", "nonlinear_bimodal"])
def test_equilibrium_problems_have_zero_source(name):
    spec = builtin(name)
    x = make_grid(spec.domain[0], spec.domain[1], 99).centers()
    np.testing.assert_array_equal(spec.g(x, 0.5), np.zeros(99))


def test_stationary_exact_solution_is_flux_equilibrium():
    # inserting the time-independent u_exact into the oracle must give
    # g = 0: it is an equilibrium of the flux, not just any solution
    spec = builtin("stationary_ou")
    g_oracle = manufactured_source(spec.u_exact, spec.B, spec.C)
    x = np.linspace(-5.0, 5.0, 401)
    np.testing.assert_allclose(g_oracle(x, 0.0), np.zeros_like(x),
                               atol=1e-9)


def test_manufactured_source_analytic_closures_match_fd():
    # a problem with nonconstant C exercises the dC_dx term
    def u_exact(x, t):
        return np.exp(-np.square(x - 1.0) - 2.0 * t)

    def B(x, t):
        return np.square(x)

    def C(x, t):
        return 1.0 + 0.5 * np.square(x)

    g_fd = manufactured_source(u_exact, B, C)
    g_an = manufactured_source(
        u_exact, B, C,
        du_dt=lambda x, t: -2.0 * u_exact(x, t),
        du_dx=lambda x, t: -2.0 * (x - 1.0) * u_exact(x, t),
        d2u_dx2=lambda x, t: (4.0 * np.square(x - 1.0) - 2.0)
        * u_exact(x, t),
        dB_dx=lambda x, t: 2.0 * x,
        dC_dx=lambda x, t: x,
    )
    x = np.linspace(-3.0, 4.0, 301)
    for t in (0.0, 0.7):
        np.testing.assert_allclose(g_fd(x, t), g_an(x, t), atol=1e-8)
