"""
Scattering amplitude on the sphere grid.

Rows are outgoing directions ω_a, columns incident directions ω'_b:

    f(ω_a, ω'_b) = -(1/4π) Σ_i w_i e^{-ik ω_a·r_i} W_i s_i ψ_ib

using V φ = W |V|^{1/2} ψ.
"""
from dataclasses import dataclass

import numpy as np

from ls_solver import WaveTable, plane_wave_matrix
from potentials import PotentialSpec, evaluate
from quadrature import SphereGrid, VolumeGrid
from utils.errors import GridError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class AmplitudeMatrix:
    """f(ω_a, ω'_b, λ) for every pair of sphere-grid directions."""
    energy: float
    values: np.ndarray
    sphere: SphereGrid

    @property
    def wavenumber(self) -> float:
        return float(np.sqrt(self.energy))

    @property
    def size(self) -> int:
        return self.sphere.size

    def forward(self) -> np.ndarray:
        """f(ω, ω) on every grid direction."""
        return np.diag(self.values).copy()


def outgoing_projection(sg: SphereGrid, grid: VolumeGrid, k: float) -> np.ndarray:
    """E[a, i] = e^{-ik ω_a · r_i}, shape A × N."""
    return plane_wave_matrix(sg.directions, grid.nodes, k, sign=-1.0).T


def scattering_amplitude(w: WaveTable, p: PotentialSpec, grid: VolumeGrid, sg: SphereGrid) -> AmplitudeMatrix:
    """
    Amplitude matrix from the solved wave table.

    Raises:
        GridError: If the wave table was solved on another volume or sphere grid
    """
    if w.grid is not grid and (w.grid.size != grid.size or not np.array_equal(w.grid.nodes, grid.nodes)):
        raise GridError("wave table was solved on a different volume grid")
    if not w.incident.same_as(sg):
        raise GridError(
            f"wave table incident grid ({w.incident.n_theta}x{w.incident.n_phi}) "
            f"differs from the amplitude grid ({sg.n_theta}x{sg.n_phi})"
        )
    if p.is_zero:
        return AmplitudeMatrix(w.energy, np.zeros((sg.size, sg.size), dtype=np.complex128), sg)

    values = -(outgoing_projection(sg, grid, w.wavenumber) @ (w.source_weights[:, None] * w.psi)) / (4.0 * np.pi)
    logger.debug(f"Amplitude at lambda={w.energy:g}: max |f| = {np.abs(values).max():.6e}")
    return AmplitudeMatrix(w.energy, values, sg)


def born_amplitude(p: PotentialSpec, omega, omega_prime, energy: float, grid: VolumeGrid) -> complex:
    """
    First Born amplitude -(1/4π) ∫ e^{-ik(ω - ω')·r} V(r) dr on the volume grid.
    """
    if not energy > 0:
        raise ValueError(f"born_amplitude needs lambda > 0, got {energy}")
    q = np.sqrt(energy) * (np.asarray(omega, dtype=float) - np.asarray(omega_prime, dtype=float))
    potential = evaluate(p, grid.nodes)
    return complex(-np.sum(grid.weights * potential * np.exp(-1j * (grid.nodes @ q))) / (4.0 * np.pi))


def born_amplitude_matrix(p: PotentialSpec, grid: VolumeGrid, sg: SphereGrid, energy: float) -> AmplitudeMatrix:
    """Born amplitude for every pair of sphere-grid directions."""
    if not energy > 0:
        raise ValueError(f"born_amplitude needs lambda > 0, got {energy}")
    k = np.sqrt(energy)
    projection = outgoing_projection(sg, grid, k)
    weighted = grid.weights * evaluate(p, grid.nodes)
    values = -((projection * weighted) @ projection.conj().T) / (4.0 * np.pi)
    return AmplitudeMatrix(float(energy), values, sg)
