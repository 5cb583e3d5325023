"""
Tests for pointwise evaluation in potentials/evaluation.py.
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from potentials import (
    evaluate,
    evaluate_radial,
    gaussian,
    gaussian_off_center,
    sign_and_sqrt,
    square_well,
    tabulated_radial,
    yukawa,
)
from utils.errors import PotentialError


class TestEvaluate:
    """Closed forms inside the support, exact zero outside."""

    def test_gaussian(self):
        p = gaussian(-2.0, 1.0)
        points = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.6, 0.8]])
        assert_allclose(evaluate(p, points), [-2.0, -2.0 * np.exp(-1.0), -2.0 * np.exp(-1.0)])

    def test_yukawa(self):
        p = yukawa(0.5, 2.0)
        assert evaluate(p, [0.0, 0.0, 0.5]) == pytest.approx(0.5 * np.exp(-1.0) / 0.5)

    def test_square_well_edge_is_inside(self):
        p = square_well(3.0, 1.0)
        assert_allclose(evaluate_radial(p, [0.5, 1.0, 1.0 + 1e-12]), [-3.0, -3.0, 0.0])

    def test_zero_beyond_support(self):
        p = gaussian(-2.0, 1.0)
        assert evaluate(p, [p.support_radius * 1.01, 0.0, 0.0]) == 0.0

    def test_tabulated_interpolates(self):
        p = tabulated_radial([0.0, 1.0, 2.0], [-2.0, -1.0, 0.0])
        assert_allclose(evaluate_radial(p, [0.5, 1.5, 3.0]), [-1.5, -0.5, 0.0])

    def test_tabulated_below_first_radius(self):
        p = tabulated_radial([0.5, 1.0, 2.0], [-2.0, -1.0, 0.0])
        with pytest.raises(PotentialError, match="below the first table radius"):
            evaluate_radial(p, [0.1])

    def test_off_center(self):
        p = gaussian_off_center(1.5, 0.5, (0.0, 0.0, 1.0))
        assert evaluate(p, [0.0, 0.0, 1.0]) == pytest.approx(1.5)
        assert evaluate(p, [0.0, 0.0, -1.0]) == pytest.approx(1.5 * np.exp(-16.0))
        with pytest.raises(PotentialError):
            evaluate_radial(p, [1.0])

    def test_shape_checks(self):
        p = gaussian(-2.0, 1.0)
        assert evaluate(p, np.zeros((4, 5, 3))).shape == (4, 5)
        assert np.ndim(evaluate(p, [0.0, 0.0, 1.0])) == 0
        with pytest.raises(PotentialError):
            evaluate(p, np.zeros((4, 2)))


class TestSignAndSqrt:
    """W s s reproduces V."""

    @pytest.mark.parametrize("p", [gaussian(-2.0, 1.0), yukawa(1.0, 1.0),
                                   gaussian_off_center(0.3, 0.7, (0.2, 0.0, 0.0))])
    def test_factorization(self, p, rng):
        points = rng.uniform(-2.0, 2.0, size=(50, 3))
        w, s = sign_and_sqrt(p, points)
        assert set(np.unique(w)) <= {-1.0, 0.0, 1.0}
        assert np.all(s >= 0)
        assert_allclose(w * s * s, evaluate(p, points), rtol=1e-14, atol=0.0)
