"""
Unit tests for relative errors and fit reports.
"""

import math

import numpy as np
import pytest

from apps.hawkes.exceptions import DimensionError, HawkesValidationError
from apps.hawkes.types import ModelParams
from apps.optimization.services import (
    REPORT_COLUMNS,
    EpochRecord,
    ErrorTracker,
    FitReport,
    relative_errors,
)


@pytest.mark.unit
class TestRelativeErrors:
    """Tests for relative_errors."""

    def test_exact_estimate(self, small_params):
        assert relative_errors(small_params, small_params) == (0.0, 0.0, 0.0)

    def test_doubled_estimate(self, small_params):
        doubled = ModelParams(
            small_params.U * 2, small_params.A * 2, small_params.basis
        )

        errors = relative_errors(doubled, small_params)

        assert errors == pytest.approx((1.0, 1.0, 1.0))

    def test_matches_direct_norms(self, exp_basis):
        rng = np.random.default_rng(3)
        truth = ModelParams(rng.random((3, 4)), rng.random((3, 3, 1)), exp_basis)
        est = ModelParams(rng.random((3, 4)), rng.random((3, 3, 1)), exp_basis)

        err_U, err_A, err_theta = relative_errors(est, truth)

        assert err_U == pytest.approx(
            math.sqrt(np.sum((truth.U - est.U) ** 2) / np.sum(truth.U**2))
        )
        assert err_A == pytest.approx(
            math.sqrt(np.sum((truth.A - est.A) ** 2) / np.sum(truth.A**2))
        )
        assert err_theta == pytest.approx(
            math.sqrt(np.sum((truth.theta - est.theta) ** 2) / np.sum(truth.theta**2))
        )

    def test_zero_norm_truth_rejected(self, small_params):
        zero = ModelParams.zeros(2, 2, small_params.basis)

        with pytest.raises(HawkesValidationError):
            relative_errors(small_params, zero)

    def test_shape_mismatch_rejected(self, small_params, toy_params):
        with pytest.raises(DimensionError):
            relative_errors(toy_params, small_params)

    def test_tracker_restricts_agents(self, small_params):
        """Extra appended agents are ignored by the tracker."""
        wide = ModelParams(
            np.hstack([small_params.U, np.ones((2, 3))]),
            small_params.A,
            small_params.basis,
        )

        errors = ErrorTracker(small_params, agents=2)(wide)

        assert errors == (0.0, 0.0, 0.0)


@pytest.mark.unit
class TestFitReport:
    """Tests for FitReport traces."""

    @pytest.fixture
    def report(self, small_params):
        records = [
            EpochRecord(epoch=1, nll=5.0, err_A=0.5),
            EpochRecord(epoch=2, nll=4.0, err_A=0.3),
            EpochRecord(epoch=3, nll=3.5, err_A=0.2),
        ]
        return FitReport(records, small_params, {"stage": "stoc"})

    def test_frame_columns(self, report):
        frame = report.to_frame()

        assert list(frame.columns) == REPORT_COLUMNS
        assert frame["nll"].tolist() == [5.0, 4.0, 3.5]

    def test_epochs_to_reach(self, report):
        assert report.epochs_to_reach(0.3) == 2
        assert report.epochs_to_reach(0.1) is None

    def test_final(self, report):
        assert report.final.epoch == 3
        assert FitReport([], report.params).final is None

    def test_concatenate_renumbers_epochs(self, report, small_params):
        joined = FitReport.concatenate([report, report], small_params, {})

        assert [r.epoch for r in joined.records] == [1, 2, 3, 4, 5, 6]
        assert joined.nll.tolist() == [5.0, 4.0, 3.5] * 2
