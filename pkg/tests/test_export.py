"""Unit tests for report rendering and writing."""

import json

import numpy as np
import pytest

from src.errors import ManifestError, VerificationFailure
from src.export.report_writer import ReportWriter, render
from src.models.report import ErrorBlock, Report, ReportSection


@pytest.fixture
def sample_report() -> Report:
    """Отчёт с одной успешной секцией и numpy-данными."""
    report = Report(command="verify", manifest_hash="abc", seed=7, tolerances={"rank_tol": 1e-9})
    report.add(
        ReportSection(name="codim", tol=1e-6, passed=True, data={"dims": np.array([3, 4]), "codim": np.int64(1)}),
        seconds=0.25,
    )
    return report


class TestReport:
    """Тесты для кодов выхода и статуса."""

    def test_ok(self, sample_report):
        assert sample_report.exit_code == 0
        assert sample_report.status == "ok"
        assert sample_report.section("codim").passed

    def test_failed_section(self, sample_report):
        sample_report.add(ReportSection(name="reeb_transport", passed=False))
        assert sample_report.exit_code == 1
        assert sample_report.status == "verification_failed"

    def test_informational_section_does_not_fail(self, sample_report):
        sample_report.add(ReportSection(name="wagner", passed=None))
        assert sample_report.exit_code == 0

    @pytest.mark.parametrize(
        "error, code, status",
        [
            (ManifestError("bad"), 2, "input_error"),
            (VerificationFailure("dim differs", {"dim": 3}), 1, "verification_failed"),
        ],
    )
    def test_error_block(self, sample_report, error, code, status):
        sample_report.error = ErrorBlock.from_error(error)
        assert sample_report.exit_code == code
        assert sample_report.status == status
        assert sample_report.error.code == error.code


class TestRender:
    """Тесты для JSON-представления отчёта."""

    def test_numpy_values(self, sample_report):
        data = json.loads(render(sample_report))
        assert data["sections"][0]["data"] == {"dims": [3, 4], "codim": 1}
        assert data["exit_code"] == 0
        assert data["status"] == "ok"

    def test_timing_can_be_dropped(self, sample_report):
        """Без времени текст зависит только от входа и seed."""
        assert "timing" in json.loads(render(sample_report))
        text = render(sample_report, include_timing=False)
        assert "timing" not in json.loads(text)
        other = Report(**sample_report.model_dump())
        other.timing["codim"] = 99.0
        assert render(other, include_timing=False) == text

    def test_unserialisable_value(self, sample_report):
        sample_report.sections[0].data["bad"] = object()
        with pytest.raises(TypeError):
            render(sample_report)


class TestReportWriter:
    """Тесты для записи отчёта."""

    def test_write_to_file(self, sample_report, tmp_path):
        out = tmp_path / "reports" / "verify.json"
        path = ReportWriter(out, quiet=True).write(sample_report)
        assert path == out
        assert json.loads(out.read_text(encoding="utf-8"))["command"] == "verify"

    def test_write_to_stdout(self, sample_report, capsys):
        """JSON идёт в stdout, сводка в stderr."""
        assert ReportWriter(include_timing=False).write(sample_report) is None
        captured = capsys.readouterr()
        assert json.loads(captured.out)["manifest_hash"] == "abc"
        assert "codim" in captured.err
