"""
Tests for HS norms and the exceptional-value scan in ls_solver/diagnostics.py.
"""
import numpy as np
import pytest

from ls_solver import assemble_kernel, exceptional_scan, hs_norms, sine_kernel_diagonal
from potentials import evaluate, zero_potential


class TestHSNorms:
    def test_kernel_norm_matches_numpy(self, gaussian_well, small_grid):
        kernel = assemble_kernel(gaussian_well, small_grid, 1.0)
        norm_k, norm_ff = hs_norms(kernel, gaussian_well, small_grid, 1.0)
        w = small_grid.weights
        expected = np.sqrt(np.sum(w[:, None] * np.abs(kernel.entries) ** 2 / w[None, :]))
        assert norm_k == pytest.approx(expected, rel=1e-10)
        assert norm_ff > 0

    def test_zero_potential(self, small_grid):
        p = zero_potential(2.0)
        assert hs_norms(assemble_kernel(p, small_grid, 1.0), p, small_grid, 1.0) == (0.0, 0.0)

    def test_invalid_energy(self, gaussian_well, small_grid):
        kernel = assemble_kernel(gaussian_well, small_grid, 1.0)
        with pytest.raises(ValueError):
            hs_norms(kernel, gaussian_well, small_grid, 0.0)

    def test_sine_kernel_diagonal(self, gaussian_well, small_grid):
        diagonal = sine_kernel_diagonal(gaussian_well, small_grid, 4.0)
        v = np.abs(evaluate(gaussian_well, small_grid.nodes))
        np.testing.assert_allclose(diagonal, 2.0 / (4.0 * np.pi ** 2) * v * small_grid.weights)


class TestExceptionalScan:
    def test_columns(self, gaussian_well, small_grid):
        table = exceptional_scan(gaussian_well, small_grid, [0.5, 1.0])
        assert list(table.columns) == ["lambda", "sigma_min", "sigma_max", "ratio", "exceptional"]
        assert list(table["lambda"]) == [0.5, 1.0]
        assert not table["exceptional"].any()
        assert np.all(table["ratio"] <= 1.0)
