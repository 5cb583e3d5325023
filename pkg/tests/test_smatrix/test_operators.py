"""
Tests for T and S assembly in smatrix/operators.py.
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from amplitude import AmplitudeMatrix
from smatrix import amplitude_from_transition, assemble_S, assemble_T, mu_squared
from quadrature import build_sphere_grid
from utils.errors import GridError


class TestTKernel:
    def test_scaling(self, solved_gaussian):
        f = solved_gaussian.amplitude
        t = assemble_T(f)
        assert_allclose(t.values, -(1.0 / (4.0 * np.pi ** 2)) * f.values)

    def test_mu_squared(self):
        assert mu_squared(4.0) == pytest.approx(2.0 / (16.0 * np.pi ** 3))

    def test_invalid_energy(self, small_sphere):
        f = AmplitudeMatrix(0.0, np.zeros((small_sphere.size, small_sphere.size)), small_sphere)
        with pytest.raises(ValueError):
            assemble_T(f)


class TestSOperator:
    """Ŝ = I - 2πi √μ t √μ."""

    def test_round_trip_to_amplitude(self, solved_gaussian):
        f = solved_gaussian.amplitude
        back = amplitude_from_transition(solved_gaussian.operator)
        assert_allclose(back.values, f.values, rtol=1e-12, atol=1e-14)

    def test_entries(self, solved_gaussian):
        s = solved_gaussian.operator
        mu = solved_gaussian.grids.sphere.weights
        f = solved_gaussian.amplitude.values
        a, b = 2, 33
        expected = 1j / (2.0 * np.pi) * np.sqrt(mu[a] * mu[b]) * f[a, b]
        assert s.transition[a, b] == pytest.approx(expected, rel=1e-12)
        assert_allclose(s.matrix - np.eye(s.transition.shape[0]), s.transition, atol=1e-14)

    def test_near_unitary(self, solved_gaussian):
        assert solved_gaussian.operator.unitarity_defect < 1e-3

    def test_zero_amplitude_is_identity(self, small_sphere):
        f = AmplitudeMatrix(1.0, np.zeros((small_sphere.size, small_sphere.size), dtype=complex), small_sphere)
        s = assemble_S(assemble_T(f), small_sphere)
        assert s.unitarity_defect == 0.0
        assert s.normality_defect == 0.0
        assert_allclose(s.matrix, np.eye(small_sphere.size))

    def test_mismatched_grid(self, solved_gaussian):
        with pytest.raises(GridError):
            assemble_S(solved_gaussian.transition, build_sphere_grid(4, 8))
