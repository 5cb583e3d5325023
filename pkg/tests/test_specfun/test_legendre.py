"""
Tests for specfun/legendre.py against scipy.special.
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import eval_legendre

from quadrature import build_theta_rule
from specfun import legendre_norm_audit, legendre_norm_integral, legendre_p, legendre_table
from utils.errors import GridError


class TestLegendreTable:
    """Bonnet recurrence against the scipy evaluation."""

    def test_matches_scipy(self):
        x = np.linspace(-1.0, 1.0, 41)
        table = legendre_table(30, x)
        for ell in (0, 1, 2, 7, 30):
            assert_allclose(table[ell], eval_legendre(ell, x), atol=1e-13)

    def test_endpoints(self):
        assert_allclose(legendre_table(10, 1.0), 1.0)
        assert_allclose(legendre_table(10, -1.0), (-1.0) ** np.arange(11))

    def test_scalar_and_shape(self):
        assert isinstance(legendre_p(3, 0.5), float)
        assert legendre_p(3, 0.5) == pytest.approx(-0.4375)
        assert legendre_table(4, np.zeros((2, 3))).shape == (5, 2, 3)

    @pytest.mark.parametrize("degree, x", [(-1, 0.0), (2, 1.5)])
    def test_invalid(self, degree, x):
        with pytest.raises(ValueError):
            legendre_table(degree, x)


class TestNormIntegral:
    """∫ P_ℓ² sin θ dθ = 2 / (2ℓ + 1)."""

    def test_standard_normalization(self):
        rule = build_theta_rule(12)
        for ell in range(8):
            assert legendre_norm_integral(ell, rule) == pytest.approx(2.0 / (2 * ell + 1), rel=1e-13)

    def test_unresolved_degree(self):
        with pytest.raises(GridError):
            legendre_norm_integral(10, build_theta_rule(4))

    def test_audit_columns(self):
        audit = legendre_norm_audit(4, build_theta_rule(8))
        assert list(audit.columns) == ["l", "numerical", "standard", "literal"]
        assert_allclose(audit["numerical"], audit["standard"], rtol=1e-13)
        # the ℓ/2 + 1 column differs at every degree
        assert np.all(np.abs(audit["numerical"] - audit["literal"]) > 0.5)
