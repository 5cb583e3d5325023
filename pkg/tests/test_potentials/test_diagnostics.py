"""
Tests for the Rollnik estimate and decay monitor in potentials/diagnostics.py.
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from potentials import decay_report, equal_volume_radius, gaussian, rollnik_norm_estimate, yukawa, zero_potential
from utils.errors import PotentialError


class TestEqualVolumeRadius:
    def test_ball_volume(self):
        radius = equal_volume_radius(np.array([4.0 * np.pi / 3.0, 32.0 * np.pi / 3.0]))
        assert_allclose(radius, [1.0, 2.0])


class TestRollnikEstimate:
    """Finite, positive and quadratic in the coupling."""

    def test_gaussian_is_finite(self, small_grid):
        value = rollnik_norm_estimate(gaussian(-2.0, 1.0), small_grid)
        assert np.isfinite(value)
        assert value > 0

    def test_scales_with_coupling_squared(self, small_grid):
        one = rollnik_norm_estimate(gaussian(-1.0, 1.0), small_grid)
        three = rollnik_norm_estimate(gaussian(-3.0, 1.0), small_grid)
        assert three == pytest.approx(9.0 * one, rel=1e-12)

    def test_zero_potential(self, small_grid):
        assert rollnik_norm_estimate(zero_potential(2.0), small_grid) == 0.0


class TestDecayReport:
    """|V| r^(3+δ) along the axis."""

    def test_columns_and_values(self):
        p = gaussian(-2.0, 1.0)
        report = decay_report(p, [1.0, 2.0, 3.0])
        assert list(report.columns) == ["radius", "monitored"]
        expected = 2.0 * np.exp(-np.array([1.0, 4.0, 9.0])) * np.array([1.0, 2.0, 3.0]) ** 4
        assert_allclose(report["monitored"], expected)

    def test_monitors_beyond_truncation(self):
        p = yukawa(1.0, 1.0)
        radius = 2.0 * p.support_radius
        report = decay_report(p, [radius], delta=0.0)
        assert report["monitored"].iloc[0] == pytest.approx(np.exp(-radius) * radius ** 2)

    @pytest.mark.parametrize("radii", [[], [0.0, 1.0], [2.0, 1.0]])
    def test_invalid_radii(self, radii):
        with pytest.raises(PotentialError):
            decay_report(gaussian(-1.0, 1.0), radii)
