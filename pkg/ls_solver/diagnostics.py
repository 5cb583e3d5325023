"""
Hilbert–Schmidt norms and the exceptional-value scan over λ.
"""
from typing import Iterable, Tuple

import numpy as np
import pandas as pd
from numba import njit, prange
from tqdm import tqdm

from potentials import PotentialSpec, sign_and_sqrt
from quadrature import VolumeGrid
from utils.constants import EXCEPTIONAL_RATIO
from utils.logger import get_logger
from .conditioning import estimate_singular_values
from .kernel import KernelMatrix, assemble_kernel

logger = get_logger(__name__)

FOUR_PI_SQUARED = 4.0 * np.pi ** 2


@njit(parallel=True, cache=True)
def _weighted_frobenius_sq(entries, weights):
    # Σ_ij w_i |K_ij|^2 / w_j: the L² HS norm of the kernel behind a column-weighted matrix
    n = entries.shape[0]
    total = 0.0
    for i in prange(n):
        row = 0.0
        for j in range(n):
            value = entries[i, j]
            row += (value.real * value.real + value.imag * value.imag) / weights[j]
        total += weights[i] * row
    return total


@njit(parallel=True, cache=True)
def _sine_kernel_hs_sq(nodes, modulus, weights, k):
    # kernel (1/4π²) s(r) sin(k|r-s|)/|r-s| s(s); diagonal limit k s^2 / 4π²
    n = nodes.shape[0]
    scale = 1.0 / (4.0 * np.pi ** 2)
    total = 0.0
    for i in prange(n):
        if modulus[i] == 0.0:
            continue
        row = 0.0
        for j in range(n):
            if modulus[j] == 0.0:
                continue
            if i == j:
                value = scale * k * modulus[i] * modulus[i]
            else:
                dx = nodes[i, 0] - nodes[j, 0]
                dy = nodes[i, 1] - nodes[j, 1]
                dz = nodes[i, 2] - nodes[j, 2]
                d = np.sqrt(dx * dx + dy * dy + dz * dz)
                value = scale * modulus[i] * np.sin(k * d) / d * modulus[j]
            row += weights[j] * value * value
        total += weights[i] * row
    return total


def sine_kernel_diagonal(p: PotentialSpec, grid: VolumeGrid, energy: float) -> np.ndarray:
    """Diagonal of the F*F Nyström matrix: (√λ / 4π²) |V(r_i)| w_i."""
    _, modulus = sign_and_sqrt(p, grid.nodes)
    return np.sqrt(energy) / FOUR_PI_SQUARED * modulus ** 2 * grid.weights


def hs_norms(kernel: KernelMatrix, p: PotentialSpec, grid: VolumeGrid, energy: float) -> Tuple[float, float]:
    """
    Hilbert–Schmidt norms of K(λ) and of F*F(λ) on the volume grid.

    Both are quadrature approximations of ∫∫ |kernel(r, s)|^2 dr ds; the F*F kernel is
    evaluated on the fly and never stored.

    Returns:
        Tuple (||K||_HS, ||F*F||_HS)
    """
    if not energy > 0:
        raise ValueError(f"hs_norms needs lambda > 0, got {energy}")
    if kernel.is_zero:
        return 0.0, 0.0
    weights = np.ascontiguousarray(grid.weights)
    norm_k = float(np.sqrt(_weighted_frobenius_sq(kernel.entries, weights)))
    _, modulus = sign_and_sqrt(p, grid.nodes)
    norm_ff = float(np.sqrt(_sine_kernel_hs_sq(np.ascontiguousarray(grid.nodes), modulus, weights, np.sqrt(energy))))
    logger.debug(f"lambda={energy:g}: ||K||_HS={norm_k:.6e}, ||F*F||_HS={norm_ff:.6e}")
    return norm_k, norm_ff


def exceptional_scan(p: PotentialSpec, grid: VolumeGrid, energies: Iterable[float],
                     threshold_ratio: float = EXCEPTIONAL_RATIO) -> pd.DataFrame:
    """
    σ_min / σ_max of I + K(λ) over a list of energies.

    Returns:
        pd.DataFrame: columns lambda, sigma_min, sigma_max, ratio, exceptional
    """
    rows = []
    for energy in tqdm(list(energies), desc="Exceptional scan", unit="lambda", leave=False, disable=None):
        estimate = estimate_singular_values(assemble_kernel(p, grid, energy), threshold_ratio=threshold_ratio)
        rows.append({
            "lambda": float(energy),
            "sigma_min": estimate.sigma_min,
            "sigma_max": estimate.sigma_max,
            "ratio": estimate.ratio,
            "exceptional": estimate.exceptional,
        })
        if estimate.exceptional:
            logger.warning(f"lambda={energy:g} flagged exceptional (ratio {estimate.ratio:.3e})")
    return pd.DataFrame(rows, columns=["lambda", "sigma_min", "sigma_max", "ratio", "exceptional"])
