"""
Tests for the amplitude matrix and the Born oracle in amplitude/matrix.py.
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from amplitude import (
    born_amplitude,
    born_amplitude_matrix,
    outgoing_projection,
    reciprocity_defect,
    scattering_amplitude,
)
from ls_solver import assemble_kernel, solve_modified_ls
from potentials import zero_potential
from quadrature import build_sphere_grid
from utils.errors import GridError


class TestScatteringAmplitude:
    """f = -(1/4π) E (w W s ψ)."""

    def test_formula(self, solved_gaussian):
        run = solved_gaussian
        grid, sphere = run.grids.volume, run.grids.sphere
        f = run.amplitude
        assert f.values.shape == (sphere.size, sphere.size)
        a, b = 4, 19
        expected = -np.sum(
            np.exp(-1j * grid.nodes @ sphere.directions[a]) * run.wave.source_weights * run.wave.psi[:, b]
        ) / (4.0 * np.pi)
        assert f.values[a, b] == pytest.approx(expected, rel=1e-12)
        assert_allclose(f.forward(), np.diag(f.values))

    def test_projection_shape(self, small_grid, small_sphere):
        e = outgoing_projection(small_sphere, small_grid, 1.0)
        assert e.shape == (small_sphere.size, small_grid.size)

    def test_zero_potential(self, small_grid, small_sphere):
        p = zero_potential(2.0)
        w = solve_modified_ls(assemble_kernel(p, small_grid, 1.0), small_sphere)
        f = scattering_amplitude(w, p, small_grid, small_sphere)
        assert not np.any(f.values)

    def test_reciprocity(self, solved_gaussian):
        """f(ω, ω') = f(-ω', -ω) holds exactly for the symmetric discretization."""
        f = solved_gaussian.amplitude
        assert reciprocity_defect(f) < 1e-10 * np.abs(f.values).max()

    def test_mismatched_sphere(self, solved_gaussian, gaussian_well):
        with pytest.raises(GridError):
            scattering_amplitude(solved_gaussian.wave, gaussian_well, solved_gaussian.grids.volume,
                                 build_sphere_grid(4, 8))


class TestBornAmplitude:
    """First Born term on the volume grid."""

    def test_forward_gaussian(self, gaussian_well, small_grid):
        # -(1/4π) ∫ g e^{-r²/a²} dr = -g π^{3/2} a³ / 4π
        value = born_amplitude(gaussian_well, [0, 0, 1], [0, 0, 1], 1.0, small_grid)
        assert value.real == pytest.approx(2.0 * np.pi ** 1.5 / (4.0 * np.pi), rel=1e-3)
        assert value.imag == pytest.approx(0.0, abs=1e-12)

    def test_matrix_matches_pointwise(self, gaussian_well, small_grid, small_sphere):
        f = born_amplitude_matrix(gaussian_well, small_grid, small_sphere, 1.0)
        d = small_sphere.directions
        for a, b in [(0, 0), (3, 40), (71, 12)]:
            assert f.values[a, b] == pytest.approx(born_amplitude(gaussian_well, d[a], d[b], 1.0, small_grid),
                                                   rel=1e-12)

    def test_weak_coupling_limit(self, weak_yukawa, small_grid, small_sphere):
        w = solve_modified_ls(assemble_kernel(weak_yukawa, small_grid, 1.0), small_sphere)
        f = scattering_amplitude(w, weak_yukawa, small_grid, small_sphere)
        born = born_amplitude_matrix(weak_yukawa, small_grid, small_sphere, 1.0)
        gap = np.abs(f.values - born.values).max() / np.abs(born.values).max()
        assert gap < 0.05

    def test_invalid_energy(self, gaussian_well, small_grid):
        with pytest.raises(ValueError):
            born_amplitude(gaussian_well, [0, 0, 1], [0, 0, 1], 0.0, small_grid)
