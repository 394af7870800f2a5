"""Error norms and convergence-order fitting."""

import numpy as np
import pytest

from fpcc.metrics import (
    ErrorRecord,
    convergence_order,
    norms_spacetime,
    norms_stationary,
)


class TestStationaryNorms:
    def test_unit_example(self):
        # e = 1 on 10 cells with h = 0.1
        rec = norms_stationary(np.ones(10), 0.1)
        assert rec.n_cells == 10
        assert rec.n_steps == 0
        assert rec.l1_paper == pytest.approx(1.0)
        assert rec.l2_paper == pytest.approx(0.1)
        assert rec.l1_std == pytest.approx(1.0)
        assert rec.l2_std == pytest.approx(1.0)
        assert rec.linf == 1.0

    def test_euclidean_example(self):
        rec = norms_stationary(np.array([3.0, 4.0]), 1.0)
        assert rec.l2_std == pytest.approx(5.0)
        assert rec.linf == 4.0

    def test_zero_error(self):
        rec = norms_stationary(np.zeros(5), 0.25)
        assert (rec.l1_paper, rec.l2_paper, rec.l1_std, rec.l2_std,
                rec.linf) == (0.0, 0.0, 0.0, 0.0, 0.0)

    def test_scaled_norm_is_quadratic(self):
        # the scaled convention squares the error: doubling e quadruples
        # l2_paper but only doubles l2_std
        rng = np.random.default_rng(0)
        e = rng.standard_normal(33)
        h = 0.07
        base = norms_stationary(e, h)
        scaled = norms_stationary(2.0 * e, h)
        assert scaled.l2_paper == pytest.approx(4.0 * base.l2_paper)
        assert scaled.l2_std == pytest.approx(2.0 * base.l2_std)
        assert scaled.l1_paper == pytest.approx(2.0 * base.l1_paper)

    def test_relation_between_conventions(self):
        rng = np.random.default_rng(1)
        e = rng.standard_normal(50)
        h = 0.13
        rec = norms_stationary(e, h)
        assert rec.l2_paper == pytest.approx(h * rec.l2_std**2, rel=1e-13)


class TestSpacetimeNorms:
    def test_single_step_example(self):
        # one step = two time levels; e = 1, h = tau = 1, N = 2
        rec = norms_spacetime([np.ones(2), np.ones(2)], 1.0, 1.0)
        assert rec.n_steps == 1
        assert rec.l1_paper == pytest.approx(4.0)
        assert rec.l2_paper == pytest.approx(4.0)
        assert rec.linf == 1.0

    def test_tau_linearity(self):
        rng = np.random.default_rng(2)
        errs = [rng.standard_normal(9) for _ in range(4)]
        a = norms_spacetime(errs, 0.1, 0.02)
        b = norms_spacetime(errs, 0.1, 0.04)
        assert b.l1_paper == pytest.approx(2.0 * a.l1_paper)
        assert b.l2_paper == pytest.approx(2.0 * a.l2_paper)
        assert b.l2_std == pytest.approx(np.sqrt(2.0) * a.l2_std)

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="must not be empty"):
            norms_spacetime([], 0.1, 0.1)

    def test_all_zero(self):
        rec = norms_spacetime([np.zeros(4)] * 3, 0.5, 0.5)
        assert rec.l1_paper == 0.0 and rec.linf == 0.0


class TestConvergenceOrder:
    def test_two_point_log_ratio(self):
        assert convergence_order([9e-6, 1e-6], 3.0) == pytest.approx(2.0)

    def test_exact_power_law(self):
        errors = [5.0 * 3.0 ** (-2.0 * i) for i in range(4)]
        assert convergence_order(errors, 3.0) == pytest.approx(2.0,
                                                               rel=1e-12)

    def test_reference_table_fit(self):
        errors = [1.9392e-6, 2.4187e-7, 1.6076e-8, 1.4322e-9]
        order = convergence_order(errors, 3.0)
        assert order == pytest.approx(2.2, abs=0.05)

    def test_constant_errors_give_zero(self):
        assert convergence_order([1e-3, 1e-3, 1e-3], 3.0) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_scale_invariance(self):
        errors = [7.1e-4, 8.2e-5, 9.3e-6]
        a = convergence_order(errors, 3.0)
        b = convergence_order([1e5 * e for e in errors], 3.0)
        assert a == pytest.approx(b, rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError, match="at least two"):
            convergence_order([1e-3], 3.0)
        with pytest.raises(ValueError, match="positive and finite"):
            convergence_order([1e-3, 0.0], 3.0)
        with pytest.raises(ValueError, match="positive and finite"):
            convergence_order([1e-3, float("nan")], 3.0)
        with pytest.raises(ValueError, match="factor must exceed 1"):
            convergence_order([1e-3, 1e-4], 1.0)


def test_error_record_is_frozen():
    rec = norms_stationary(np.ones(3), 0.5)
    with pytest.raises(AttributeError):
        rec.linf = 2.0
    assert isinstance(rec, ErrorRecord)
