"""
Tests for specfun/bessel.py against scipy.special.
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import spherical_jn, spherical_yn

from specfun import spherical_bessel, spherical_bessel_table


class TestSphericalBessel:
    """j_ℓ, y_ℓ and derivatives."""

    @pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 3.7, 12.0, 40.0])
    def test_table_matches_scipy(self, x):
        degrees = np.arange(16)
        j, y, dj, dy = spherical_bessel_table(15, x)
        assert_allclose(j, spherical_jn(degrees, x), rtol=1e-10, atol=1e-300)
        assert_allclose(dj, spherical_jn(degrees, x, derivative=True), rtol=1e-9, atol=1e-14)
        # y_ℓ grows fast for small x; compare where it is representable
        finite = np.isfinite(spherical_yn(degrees, x))
        assert_allclose(y[finite], spherical_yn(degrees, x)[finite], rtol=1e-10)
        assert_allclose(dy[finite], spherical_yn(degrees, x, derivative=True)[finite], rtol=1e-9)

    def test_high_degree_small_argument(self):
        """Miller recurrence keeps tiny j_ℓ accurate."""
        assert spherical_bessel(40, 2.0)[0] == pytest.approx(spherical_jn(40, 2.0), rel=1e-10)

    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.3, 5.0, 10.0, 20.0, 33.3, 50.0])
    def test_wronskian(self, x):
        j, y, dj, dy = spherical_bessel_table(10, x)
        assert_allclose((j * dy - dj * y) * x ** 2, 1.0, rtol=0.0, atol=1e-10)

    @pytest.mark.parametrize("x", [18.0, 20.0, 27.5, 50.0])
    def test_large_argument_matches_scipy(self, x):
        """The recurrence start grows with x, so low orders stay accurate once x exceeds 20."""
        degrees = np.arange(11)
        j = spherical_bessel_table(10, x)[0]
        assert_allclose(j, spherical_jn(degrees, x), rtol=0.0, atol=1e-14)

    def test_invalid_argument(self):
        with pytest.raises(ValueError):
            spherical_bessel_table(3, 0.0)
        with pytest.raises(ValueError):
            spherical_bessel_table(-1, 1.0)
