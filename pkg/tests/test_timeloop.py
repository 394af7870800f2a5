"""Time marching, run reports, and the stationary driver."""

import dataclasses

import numpy as np
import pytest

from fpcc import (
    CycleConfig,
    builtin,
    builtin_preset,
    make_grid,
    make_hierarchy,
    run_bdf1,
    run_bdf2,
    solve_stationary,
)
from fpcc import kernels


def _hier(n=27, domain=(-6.0, 6.0)):
    return make_hierarchy(make_grid(domain[0], domain[1], n))


def _ou():
    return builtin("ou_manufactured")


class TestStepCount:
    def test_nonintegral_rejected(self):
        with pytest.raises(ValueError, match="nonintegral step count"):
            run_bdf1(_ou(), _hier(), 0.3, CycleConfig())

    def test_nonpositive_tau_rejected(self):
        for bad in (0.0, -0.1):
            with pytest.raises(ValueError, match="nonpositive tau"):
                run_bdf1(_ou(), _hier(), bad, CycleConfig())

    def test_near_integral_accepted(self):
        # 1e-8 relative slack covers accumulated decimal round-off
        tau = (1.0 / 3.0) * (1.0 + 1e-12)
        report = run_bdf1(_ou(), _hier(), tau, CycleConfig())
        assert report.steps == 3


class TestRunReport:
    def test_history_lengths_and_alignment(self):
        report = run_bdf1(_ou(), _hier(), 0.25, CycleConfig())
        assert report.steps == 4
        assert len(report.cycles_per_step) == 5
        assert report.cycles_per_step[0] == 0
        assert all(c >= 1 for c in report.cycles_per_step[1:])
        assert len(report.mass_history) == 5
        assert len(report.min_value_history) == 5
        assert report.tg_cycles_max == max(report.cycles_per_step)
        assert report.scheme == "bdf1"
        assert report.n_cells == 27
        assert report.tau == 0.25
        assert report.wall_seconds > 0.0

    def test_final_snapshot_always_present(self):
        report = run_bdf1(_ou(), _hier(), 0.25, CycleConfig())
        t_last, u_last = report.snapshots[-1]
        assert t_last == pytest.approx(1.0)
        assert u_last.shape == (27,)
        np.testing.assert_array_equal(report.u_final, u_last)

    def test_snapshot_times_snap_to_grid(self):
        report = run_bdf1(
            _ou(), _hier(), 0.25, CycleConfig(),
            snapshot_times=(0.0, 0.3, 0.5, 7.0),
        )
        times = [t for t, _ in report.snapshots]
        # 0.3 snaps to step 1 (t = 0.25); 7.0 is outside and dropped
        assert times == [0.0, 0.25, 0.5, 1.0]

    def test_error_records_when_exact_known(self):
        report = run_bdf1(_ou(), _hier(), 0.25, CycleConfig())
        assert report.error_final is not None
        assert report.error_spacetime is not None
        assert report.error_spacetime.n_steps == 4
        # tau = 0.25 is deliberately coarse; just sanity-bound the record
        assert 0.0 < report.error_final.linf < 0.2

    def test_no_error_records_without_exact(self):
        problem = builtin("nonlinear_bimodal")
        problem = dataclasses.replace(problem, t_final=1.0)
        report = run_bdf1(problem, _hier(81), 0.5, CycleConfig())
        assert report.error_final is None
        assert report.error_spacetime is None

    def test_backend_recorded(self):
        report = run_bdf1(_ou(), _hier(), 0.5, CycleConfig())
        assert report.backend == kernels.BACKEND
        assert report.backend in ("numba", "numpy")


class TestMarchPhysics:
    def test_mass_conserved_without_source(self):
        problem = dataclasses.replace(
            builtin("nonlinear_bimodal"), t_final=5.0
        )
        report = run_bdf1(problem, _hier(81), 0.1, CycleConfig())
        m = np.asarray(report.mass_history)
        assert np.max(np.abs(m - m[0])) / m[0] < 1e-12

    def test_positivity_bdf1(self):
        problem = dataclasses.replace(
            builtin("nonlinear_bimodal"), t_final=5.0
        )
        report = run_bdf1(problem, _hier(81), 0.1, CycleConfig())
        assert min(report.min_value_history) >= 0.0

    def test_bdf2_first_step_equals_bdf1(self):
        r1 = run_bdf1(_ou(), _hier(), 1.0, CycleConfig())
        r2 = run_bdf2(_ou(), _hier(), 1.0, CycleConfig())
        np.testing.assert_array_equal(r1.u_final, r2.u_final)

    def test_bdf2_more_accurate_on_long_run(self):
        tau = 0.05
        r1 = run_bdf1(_ou(), _hier(81), tau, CycleConfig())
        r2 = run_bdf2(_ou(), _hier(81), tau, CycleConfig())
        assert r2.error_final.linf < 0.1 * r1.error_final.linf

    def test_manufactured_solution_tracked(self):
        # final-time error must be small and dominated by O(tau)
        report = run_bdf1(_ou(), _hier(81), 0.01, CycleConfig())
        assert report.error_final.linf < 5e-3


class TestStationary:
    def test_requires_normalize(self):
        with pytest.raises(ValueError, match="requires cfg.normalize=True"):
            solve_stationary(builtin("stationary_ou"), _hier(81),
                             CycleConfig())

    def test_report_shape(self):
        report = solve_stationary(
            builtin("stationary_ou"), _hier(81),
            CycleConfig(normalize=True), problem_name="stationary_ou",
        )
        assert report.problem == "stationary_ou"
        assert report.scheme == "stationary"
        assert report.steps == 0
        assert report.tau == 0.0
        assert len(report.cycles_per_step) == 1
        assert report.cycles_per_step[0] == report.tg_cycles_max >= 1
        assert len(report.snapshots) == 1
        assert report.mass_history[0] == pytest.approx(1.0, abs=1e-13)
        assert report.scaling_factor is not None
        assert report.error_final is not None

    def test_solution_positive_and_unimodal(self):
        report = solve_stationary(
            builtin("stationary_ou"), _hier(81),
            CycleConfig(normalize=True),
        )
        u = report.u_final
        assert np.all(u > -1e-15)
        assert np.argmax(u) == 40  # center cell of 81
