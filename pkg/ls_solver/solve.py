"""
Multi-direction solve of the symmetrized Lippmann–Schwinger equation.

For every incident direction ω'_b the unknown ψ_b = |V|^{1/2} φ_b solves

    (I + K) ψ_b = b_b,    b_b(i) = e^{ik ω'_b · r_i} s_i

on the volume grid. One LU factorization of I + K serves every column.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from quadrature import SphereGrid, VolumeGrid
from utils.constants import DENSE_SVD_LIMIT, EXCEPTIONAL_RATIO
from utils.logger import get_logger
from .conditioning import SingularValueEstimate, identity_plus, estimate_singular_values
from .kernel import KernelMatrix

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class WaveTable:
    """
    Solutions ψ_b for every incident direction.

    Attributes:
        energy: λ
        psi: N × M array, column b for incident direction ω'_b
        incident: Sphere grid whose nodes are the incident directions
        grid: The volume grid
        signs: W_i
        modulus: s_i
        residuals: Relative residual ||(I+K)ψ_b - b_b|| / ||b_b|| per column
        conditioning: σ_min / σ_max of I + K at this energy
    """
    energy: float
    psi: np.ndarray
    incident: SphereGrid
    grid: VolumeGrid
    signs: np.ndarray
    modulus: np.ndarray
    residuals: np.ndarray
    conditioning: SingularValueEstimate

    @property
    def wavenumber(self) -> float:
        return float(np.sqrt(self.energy))

    @property
    def source_weights(self) -> np.ndarray:
        """w_i W_i s_i, the factor multiplying ψ in every far-field sum."""
        return self.grid.weights * self.signs * self.modulus


def plane_wave_matrix(directions: np.ndarray, nodes: np.ndarray, k: float, sign: float = 1.0) -> np.ndarray:
    """
    E[i, b] = exp(sign · i k ω_b · r_i).

    Args:
        directions: M × 3 unit vectors
        nodes: N × 3 points
        k: Wavenumber
        sign: +1 for incident waves, -1 for the outgoing projection

    Returns:
        np.ndarray: N × M complex matrix
    """
    return np.exp(sign * 1j * k * (nodes @ directions.T))


def incident_rhs(kernel: KernelMatrix, incident: SphereGrid) -> np.ndarray:
    """Right-hand sides b_b(i) = e^{ik ω'_b · r_i} s_i as an N × M matrix."""
    return plane_wave_matrix(incident.directions, kernel.grid.nodes, kernel.wavenumber) * kernel.modulus[:, None]


def _column_residuals(kernel: KernelMatrix, psi: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    applied = psi + kernel.entries @ psi
    scale = np.linalg.norm(rhs, axis=0)
    misfit = np.linalg.norm(applied - rhs, axis=0)
    return np.divide(misfit, scale, out=np.zeros_like(misfit), where=scale > 0)


def solve_modified_ls(kernel: KernelMatrix, incident: SphereGrid,
                      threshold_ratio: float = EXCEPTIONAL_RATIO, dense_limit: int = DENSE_SVD_LIMIT) -> WaveTable:
    """
    Solve (I + K) ψ_b = b_b for every incident direction of the sphere grid.

    Args:
        kernel: K(λ) for λ > 0
        incident: Incident directions
        threshold_ratio: Relative σ_min threshold for refusing the solve
        dense_limit: Size limit for the dense singular-value path

    Returns:
        WaveTable

    Raises:
        ExceptionalValueError: If I + K is numerically singular at this energy
    """
    rhs = incident_rhs(kernel, incident)

    if kernel.is_zero:
        # V ≡ 0: K vanishes and ψ_b = b_b exactly
        conditioning = estimate_singular_values(kernel, threshold_ratio=threshold_ratio)
        residuals = np.zeros(incident.size)
        return WaveTable(kernel.energy, rhs, incident, kernel.grid, kernel.signs, kernel.modulus, residuals, conditioning)

    lu = lu_factor(identity_plus(kernel.entries), overwrite_a=True, check_finite=False)
    conditioning = estimate_singular_values(kernel, lu=lu, threshold_ratio=threshold_ratio, dense_limit=dense_limit)
    conditioning.raise_if_exceptional()

    psi = lu_solve(lu, rhs, check_finite=False)
    residuals = _column_residuals(kernel, psi, rhs)
    logger.info(
        f"Solved {incident.size} incident directions at lambda={kernel.energy:g} "
        f"(max relative residual {residuals.max():.2e}, sigma_min={conditioning.sigma_min:.3e})"
    )
    return WaveTable(kernel.energy, psi, incident, kernel.grid, kernel.signs, kernel.modulus, residuals, conditioning)
