"""
Tests for validator utility functions in utils/validators.py.
"""
import math

import pytest

from utils.errors import ConfigError
from utils.validators import validate_count, validate_even_count, validate_interval, validate_positive_number


class TestValidators:
    """Test suite for validation utility functions."""

    def test_validate_positive_number(self):
        """Positive numbers pass (strings are converted); zero, negatives and junk are rejected."""
        assert validate_positive_number("x", 2) == 2.0
        assert validate_positive_number("x", "0.5") == 0.5

        for bad in (0, -1.0, "abc", None, math.inf, math.nan):
            with pytest.raises(ConfigError):
                validate_positive_number("x", bad)

    def test_error_names_the_field(self):
        """The field name appears in the message."""
        with pytest.raises(ConfigError, match="grid.r_max"):
            validate_positive_number("grid.r_max", -3)

    def test_validate_count(self):
        """Integers (and integral floats) at or above the minimum pass."""
        assert validate_count("n", 3) == 3
        assert validate_count("n", 4.0) == 4
        assert validate_count("n", 0, minimum=0) == 0

        for bad in (2.5, "3", True, None):
            with pytest.raises(ConfigError):
                validate_count("n", bad)
        with pytest.raises(ConfigError, match="at least 2"):
            validate_count("n", 1, minimum=2)

    def test_validate_even_count(self):
        """Odd counts are rejected (antipodal closure of the sphere grid)."""
        assert validate_even_count("n_phi", 24) == 24
        with pytest.raises(ConfigError, match="even"):
            validate_even_count("n_phi", 23)


class TestIntervalValidator:
    """Test cases for interval validation."""

    def test_valid_interval(self):
        assert validate_interval("kappa_range", [0.05, 3]) == (0.05, 3.0)

    @pytest.mark.parametrize("bounds", [[1.0], [2.0, 1.0], [1.0, 1.0], [-1.0, 2.0], "0.1,2", None])
    def test_invalid_interval(self, bounds):
        with pytest.raises(ConfigError):
            validate_interval("kappa_range", bounds)
