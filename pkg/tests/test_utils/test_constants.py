"""
Tests for constants defined in utils/constants.py.
"""
from utils.constants import (
    DEFAULT_N_PHI,
    DEFAULT_N_R,
    DEFAULT_N_THETA,
    DEFAULT_R_MAX,
    EXCEPTIONAL_RATIO,
    FARFIELD_RADII,
    POTENTIAL_KINDS,
    TOOL_NAME,
    TOOL_VERSION,
    TRUNCATION_FACTOR,
)
from potentials import PotentialKind


class TestConstants:
    """Test suite for application constants."""

    def test_reference_grid(self):
        """Default grid is the reference resolution with an even azimuthal count."""
        assert (DEFAULT_N_R, DEFAULT_N_THETA, DEFAULT_N_PHI, DEFAULT_R_MAX) == (24, 12, 24, 6.0)
        assert DEFAULT_N_PHI % 2 == 0

    def test_tolerances(self):
        assert TRUNCATION_FACTOR == 1e-10
        assert EXCEPTIONAL_RATIO == 1e-8
        assert list(FARFIELD_RADII) == sorted(FARFIELD_RADII)

    def test_potential_kinds_match_enum(self):
        assert set(POTENTIAL_KINDS) == {kind.value for kind in PotentialKind}

    def test_tool_identity(self):
        assert TOOL_NAME == "ls_scatter"
        assert TOOL_VERSION.count(".") == 2
