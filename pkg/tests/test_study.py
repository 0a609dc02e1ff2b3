"""Experiment driver: order fitting, table emission, study execution."""

import numpy as np
import pytest

from nlcolloc import study
from nlcolloc.oracle import constant, exponential, monomial
from nlcolloc.study import StudyConfig, StudyReport, StudyRow


class TestFitOrders:
    def test_synthetic_power_law(self):
        hs = [1.0 / 2 ** k for k in range(5)]
        for p in (1.0, 2.0, 3.3):
            errs = [7.2 * h ** p for h in hs]
            orders = study.fit_orders(hs, errs)
            assert orders[0] is None
            assert all(abs(o - p) < 1e-12 for o in orders[1:])

    def test_floor_entries_excluded(self):
        hs = [0.1, 0.05, 0.025]
        errs = [1e-8, 1e-13, 1e-14]
        orders = study.fit_orders(hs, errs)
        assert orders == [None, None, None]

    def test_non_halving_levels(self):
        hs = [1.0 / 10, 1.0 / 30]
        errs = [h ** 2 for h in hs]
        assert study.fit_orders(hs, errs)[1] == pytest.approx(2.0)


class TestConfigValidation:
    def test_levels_must_increase(self):
        with pytest.raises(ValueError, match="increasing"):
            StudyConfig("plc", "truncation", 0.5, (32, 16))

    def test_levels_must_nest(self):
        with pytest.raises(ValueError, match="multiple"):
            StudyConfig("plc", "truncation", 0.5, (16, 24))

    def test_scheme_checked(self):
        with pytest.raises(ValueError, match="scheme"):
            StudyConfig("spline", "truncation", 0.5, (16,))

    def test_gamma_checked(self):
        with pytest.raises(ValueError, match="gamma"):
            StudyConfig("plc", "truncation", 1.0, (16,))


class TestTruncationStudy:
    def test_moving_first_point_tracks_h(self):
        config = StudyConfig("plc", "truncation", 0.4, (8, 16),
                             evalPoints=("first",))
        report = study.run_truncation_study(config)[0]
        # the error at x=h differs level to level; both entries present
        assert len(report.rows) == 2
        assert report.rows[0].N == 8 and report.rows[1].N == 16
        assert report.rows[0].error > report.rows[1].error > 0.0

    def test_one_report_per_point(self):
        config = StudyConfig("plc", "truncation", 0.4, (8, 16),
                             evalPoints=("center", 0.3))
        reports = study.run_truncation_study(config)
        assert [r.label for r in reports] == ["x=center", "x=0.3"]

    def test_exact_function_floors(self):
        config = StudyConfig("pqc", "truncation", 0.5, (8, 16),
                             testFunction=monomial(2))
        report = study.run_truncation_study(config)[0]
        assert all(r.floor for r in report.rows)
        assert all(r.order is None for r in report.rows)

    def test_mode_mismatch_rejected(self):
        config = StudyConfig("plc", "global", 0.5, (8, 16))
        with pytest.raises(ValueError, match="truncation"):
            study.run_truncation_study(config)


class TestGlobalStudy:
    def test_constant_solution_reproduced(self):
        config = StudyConfig("plc", "global", 0.5, (8, 16),
                             testFunction=constant(4.0))
        report = study.run_global_study(config)
        assert all(r.error <= 1e-10 for r in report.rows)

    def test_errors_decrease_for_exp(self):
        config = StudyConfig("pqc", "global", 0.3, (4, 8, 16),
                             testFunction=exponential())
        report = study.run_global_study(config)
        errs = report.errors()
        assert np.all(errs[:-1] > errs[1:])

    def test_metadata_echoes_config(self):
        config = StudyConfig("plc", "global", 0.2, (4, 8))
        report = study.run_global_study(config)
        assert report.metadata["scheme"] == "plc"
        assert report.metadata["gamma"] == 0.2
        assert report.metadata["levels"] == (4, 8)
        assert "timestamp" in report.metadata


def synthetic_report():
    rows = (StudyRow(16, 1 / 16, 8.9488e-03, None),
            StudyRow(32, 1 / 32, 4.4746e-03, 0.9999))
    return StudyReport(rows=rows, normUsed="max", label="max-norm error",
                       metadata={})


class TestEmission:
    def test_csv_format(self):
        text = study.emit_table(synthetic_report(), "csv")
        lines = text.strip().splitlines()
        assert lines[0] == "N,h,error,order"
        assert lines[1] == "16,0.0625,8.9488e-03,"
        assert lines[2] == "32,0.03125,4.4746e-03,0.9999"

    def test_markdown_format(self):
        text = study.emit_table(synthetic_report(), "markdown")
        assert text.startswith("| N | h |")
        assert "8.9488e-03" in text

    def test_round_trip(self):
        report = synthetic_report()
        rows = study.parse_table_csv(study.emit_table(report, "csv"))
        for parsed, row in zip(rows, report.rows):
            assert parsed[0] == row.N
            assert parsed[1] == pytest.approx(row.h)
            assert parsed[2] == pytest.approx(row.error, rel=1e-4)
            assert parsed[3] == (row.order if row.order is None
                                 else pytest.approx(row.order, abs=1e-4))

    def test_empty_report_rejected(self):
        empty = StudyReport(rows=(), normUsed="max", label="", metadata={})
        with pytest.raises(ValueError, match="empty"):
            study.emit_table(empty)

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError, match="format"):
            study.emit_table(synthetic_report(), "latex")

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError, match="header"):
            study.parse_table_csv("a,b\n1,2\n")


def test_report_filename():
    config = StudyConfig("pqc", "global", 0.3, (16, 32))
    assert study.report_filename(config) == "pqc_global_gamma0.3.csv"
