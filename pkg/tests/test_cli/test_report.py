"""
Tests for the verification report in cli/report.py.
"""
from cli.report import VerificationReport


class TestVerificationReport:
    def test_threshold_outcomes(self):
        report = VerificationReport("abc")
        assert report.add("unitarity", 1e-4, 1e-3, energy=1.0, grid="g").passed is True
        assert report.add("parseval", 1e-8, 1e-10, energy=1.0, grid="g").passed is False
        info = report.add("reciprocity", 1e-12, energy=1.0, grid="g", extra=2)
        assert info.informational
        assert info.details == {"extra": 2}
        assert [c.name for c in report.failures] == ["parseval"]
        assert not report.passed

    def test_explicit_outcome(self):
        report = VerificationReport("abc")
        criterion = report.add("farfield_decreasing", 0.5, passed=True)
        assert criterion.passed is True and criterion.threshold is None
        assert report.passed

    def test_missing_value_is_informational(self):
        report = VerificationReport("abc")
        assert report.add("cross_section_ratio", None, 1e-2).passed is None
        assert report.passed

    def test_error_fails_report(self):
        report = VerificationReport("abc")
        report.add("unitarity", 0.0, 1e-3)
        report.add_error("born_limit", "grid too coarse")
        assert not report.passed
        assert "1 checks errored" in report.summary()
        assert report.errors[0]["config_hash"] == "abc"

    def test_frame_and_record(self):
        report = VerificationReport("abc")
        report.add("unitarity", 1e-4, 1e-3, energy=2.0, grid="8x6x12@2")
        report.add("reciprocity", 0.0)
        frame = report.frame()
        assert list(frame.columns) == ["name", "lambda", "value", "threshold", "passed", "grid", "config_hash"]
        assert len(frame) == 2
        record = report.to_record()
        assert record["passed"] is True
        assert record["n_criteria"] == 2
        assert record["criteria"][0]["config_hash"] == "abc"
        assert report.summary() == "Verification PASSED: 1/1 criteria passed"
