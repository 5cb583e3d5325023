"""
Nyström assembly of the symmetrized Lippmann–Schwinger kernel.

    K_ij = (1/4π) s_i  e^{ik|r_i - r_j|} / |r_i - r_j|  W_j s_j  w_j      (i ≠ j)
    K_ii = s_i^2 W_i [ (cos kρ_i + kρ_i sin kρ_i - 1) / k^2  +  i k w_i / 4π ],   ρ_i = (3 w_i / 4π)^{1/3}

with s = |V|^{1/2}, W = sign V and w the volume weights. The singular part cos(k|x|)/|x| of the
self cell is integrated over the ball of equal volume; the smooth part sin(k|x|)/|x| takes its
point value k, so the anti-Hermitian part of K is the plane-wave sum that makes Ŝ unitary.
At λ = -κ^2 the whole self cell e^{-κ|x|}/|x| is integrated over the ball.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit, prange
from tqdm import tqdm

from potentials import PotentialSpec, equal_volume_radius, sign_and_sqrt
from quadrature import VolumeGrid
from utils.constants import KERNEL_BLOCK_ROWS
from utils.errors import ScatteringError
from utils.logger import get_logger

logger = get_logger(__name__)

FOUR_PI = 4.0 * np.pi
# below this kρ the ball integrals use their Taylor series
CELL_SERIES_LIMIT = 1e-2


def cosine_cell(rho: np.ndarray, k: float) -> np.ndarray:
    """(1/4π) ∫_{|x|<ρ} cos(k|x|) / |x| dx = (cos kρ + kρ sin kρ - 1) / k^2."""
    x = k * rho
    small = x < CELL_SERIES_LIMIT
    safe = np.where(small, 1.0, x)
    direct = (np.cos(safe) + safe * np.sin(safe) - 1.0) / safe ** 2
    series = 0.5 - x ** 2 / 8.0 + x ** 4 / 144.0
    return rho ** 2 * np.where(small, series, direct)


def decaying_cell(rho: np.ndarray, kappa: float) -> np.ndarray:
    """(1/4π) ∫_{|x|<ρ} e^{-κ|x|} / |x| dx = (1 - (1 + κρ) e^{-κρ}) / κ^2."""
    y = kappa * rho
    small = y < CELL_SERIES_LIMIT
    safe = np.where(small, 1.0, y)
    direct = (1.0 - (1.0 + safe) * np.exp(-safe)) / safe ** 2
    series = 0.5 - y / 3.0 + y ** 2 / 8.0 - y ** 3 / 30.0 + y ** 4 / 144.0
    return rho ** 2 * np.where(small, series, direct)


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """
    K(λ) on a volume grid.

    Attributes:
        energy: λ (> 0 for scattering; the bound-state scan uses -κ^2)
        entries: N × N matrix, Nyström weight absorbed into the columns
        grid: The volume grid
        signs: W_i = sign V(r_i)
        modulus: s_i = |V(r_i)|^{1/2}
    """
    energy: float
    entries: np.ndarray
    grid: VolumeGrid
    signs: np.ndarray
    modulus: np.ndarray

    @property
    def size(self) -> int:
        return self.grid.size

    @property
    def wavenumber(self) -> float:
        return float(np.sqrt(self.energy))

    @property
    def is_zero(self) -> bool:
        return not np.any(self.modulus)


@njit(parallel=True, cache=True)
def _fill_outgoing_rows(nodes, left, right, k, diagonal, start, stop, out):
    n = nodes.shape[0]
    for i in prange(start, stop):
        if left[i] == 0.0:
            continue
        xi, yi, zi = nodes[i, 0], nodes[i, 1], nodes[i, 2]
        for j in range(n):
            if j == i:
                out[i, j] = diagonal[i]
                continue
            if right[j] == 0.0:
                continue
            dx = xi - nodes[j, 0]
            dy = yi - nodes[j, 1]
            dz = zi - nodes[j, 2]
            d = np.sqrt(dx * dx + dy * dy + dz * dz)
            out[i, j] = left[i] * right[j] * np.exp(1j * k * d) / d


@njit(parallel=True, cache=True)
def _fill_decaying_rows(nodes, left, right, kappa, diagonal, start, stop, out):
    n = nodes.shape[0]
    for i in prange(start, stop):
        if left[i] == 0.0:
            continue
        xi, yi, zi = nodes[i, 0], nodes[i, 1], nodes[i, 2]
        for j in range(n):
            if j == i:
                out[i, j] = diagonal[i]
                continue
            if right[j] == 0.0:
                continue
            dx = xi - nodes[j, 0]
            dy = yi - nodes[j, 1]
            dz = zi - nodes[j, 2]
            d = np.sqrt(dx * dx + dy * dy + dz * dz)
            out[i, j] = left[i] * right[j] * np.exp(-kappa * d) / d


def kernel_factors(p: PotentialSpec, grid: VolumeGrid, k: float = 0.0, kappa: Optional[float] = None):
    """
    Row and column factors of the Nyström kernel.

    Args:
        k: Wavenumber of the outgoing kernel; 0 gives the static self cell ρ²/2
        kappa: Decay rate of the kernel at λ = -κ^2; overrides k

    Returns:
        Tuple (signs W_i, modulus s_i, left s_i / 4π, right W_j s_j w_j, diagonal K_ii)
    """
    if grid.r_max < p.support_radius:
        logger.warning(
            f"Grid radius {grid.r_max:g} does not cover the support radius {p.support_radius:g}; "
            "V is cut at the grid radius"
        )
    signs, modulus = sign_and_sqrt(p, grid.nodes)
    if not np.all(np.isfinite(modulus)):
        raise ScatteringError(f"{p.describe()} is not finite on the grid nodes")
    left = modulus / FOUR_PI
    right = signs * modulus * grid.weights
    rho = equal_volume_radius(grid.weights)
    weight = modulus ** 2 * signs
    if kappa is not None:
        diagonal = weight * decaying_cell(rho, kappa)
    else:
        diagonal = weight * (cosine_cell(rho, k) + 1j * k * grid.weights / FOUR_PI)
    return signs, modulus, left, right, diagonal


def _fill_in_blocks(fill, nodes, left, right, parameter, diagonal, out, label):
    n = nodes.shape[0]
    starts = range(0, n, KERNEL_BLOCK_ROWS)
    for start in tqdm(starts, desc=label, unit="block", leave=False, disable=None):
        fill(nodes, left, right, parameter, diagonal, start, min(start + KERNEL_BLOCK_ROWS, n), out)


def assemble_kernel(p: PotentialSpec, grid: VolumeGrid, energy: float) -> KernelMatrix:
    """
    Assemble K(λ) for λ > 0.

    Args:
        p: The potential
        grid: Volume grid covering the support ball
        energy: λ > 0; k = √λ

    Returns:
        KernelMatrix: Complex N × N matrix

    Raises:
        ValueError: If λ <= 0 (use the bound-state scan for negative energies)
    """
    if not energy > 0:
        raise ValueError(f"assemble_kernel needs lambda > 0, got {energy}; use bound_state_scan for lambda < 0")
    signs, modulus, left, right, diagonal = kernel_factors(p, grid, k=float(np.sqrt(energy)))
    n = grid.size
    entries = np.zeros((n, n), dtype=np.complex128)
    nodes = np.ascontiguousarray(grid.nodes)
    _fill_in_blocks(_fill_outgoing_rows, nodes, left, right, float(np.sqrt(energy)),
                    diagonal.astype(np.complex128), entries, "Assembling K")
    logger.debug(f"Assembled K(lambda={energy:g}) on {grid.describe()}")
    return KernelMatrix(float(energy), entries, grid, signs, modulus)


def assemble_kernel_imaginary(p: PotentialSpec, grid: VolumeGrid, kappa: float) -> KernelMatrix:
    """
    Assemble K at λ = -κ^2, where the phase factor becomes the real decay e^{-κ|r-s|}.

    Returns:
        KernelMatrix: Real N × N matrix with energy -κ^2
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    signs, modulus, left, right, diagonal = kernel_factors(p, grid, kappa=float(kappa))
    n = grid.size
    entries = np.zeros((n, n), dtype=np.float64)
    nodes = np.ascontiguousarray(grid.nodes)
    _fill_in_blocks(_fill_decaying_rows, nodes, left, right, float(kappa), diagonal, entries, "Assembling K(i kappa)")
    return KernelMatrix(-float(kappa) ** 2, entries, grid, signs, modulus)
