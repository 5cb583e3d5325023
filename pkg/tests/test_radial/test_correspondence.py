"""
Tests for the spectrum and phase-shift comparison in radial/correspondence.py.
"""
import numpy as np
import pandas as pd
import pytest

from radial import CorrespondenceReport, PhaseShiftTable, phase_shift_table, verify_eigen_correspondence
from smatrix import SMatrixSpectrum


@pytest.fixture(scope="module")
def gaussian_table(gaussian_well):
    return phase_shift_table(gaussian_well, 1.0)


class TestVerifyEigenCorrespondence:
    def test_report(self, solved_gaussian, gaussian_table):
        report = verify_eigen_correspondence(solved_gaussian.spectrum, gaussian_table, max_degree=2,
                                             sigma_double=solved_gaussian.sigma_double)
        assert list(report.table["l"]) == [0, 1, 2]
        assert list(report.table.columns) == [
            "l", "nu_re", "nu_im", "s_re", "s_im", "distance", "literal_distance",
            "multiplicity", "expected", "resolved", "overlap",
        ]
        # coarse grid: agreement only to the discretization level
        assert report.max_distance < 0.2
        assert abs(report.cross_section_ratio - 1.0) < 0.2
        assert report.amplitude_route_gap < 0.2

    def test_record(self, solved_gaussian, gaussian_table):
        record = verify_eigen_correspondence(solved_gaussian.spectrum, gaussian_table, max_degree=1).to_record()
        assert record["lambda"] == 1.0
        assert record["sigma_double"] is None
        assert record["cross_section_ratio"] is None
        assert len(record["per_l"]) == 2
        np.testing.assert_allclose(record["sigma_single_angular"], record["sigma_single_partial"], rtol=1e-10)

    def test_energy_mismatch(self, solved_gaussian, gaussian_well):
        with pytest.raises(ValueError):
            verify_eigen_correspondence(solved_gaussian.spectrum, phase_shift_table(gaussian_well, 2.0))


class TestMultiplicities:
    @staticmethod
    def report(multiplicity, resolved):
        table = pd.DataFrame({"l": [0, 1, 2], "distance": 0.0, "multiplicity": multiplicity,
                              "expected": [1, 3, 5], "resolved": resolved})
        return CorrespondenceReport(energy=1.0, table=table, sigma_single=(0.0, 0.0))

    def test_resolved_degrees_are_checked(self):
        assert self.report([1, 3, 5], [True, True, True]).multiplicities_ok
        assert not self.report([1, 2, 5], [True, True, True]).multiplicities_ok

    def test_unresolved_degrees_are_skipped(self):
        assert self.report([72, 72, 72], [False, False, False]).multiplicities_ok
        assert not self.report([1, 3, 4], [True, False, True]).multiplicities_ok

    def test_zero_spectrum_is_unresolved(self, small_sphere):
        n = small_sphere.size
        spec = SMatrixSpectrum(1.0, np.zeros(n, dtype=complex), np.eye(n, dtype=complex),
                               np.eye(n, dtype=complex), small_sphere)
        table = PhaseShiftTable(1.0, np.zeros(3), 0.01, 5.0)
        report = verify_eigen_correspondence(spec, table, max_degree=2)
        assert not report.table["resolved"].any()
        assert report.multiplicities_ok
