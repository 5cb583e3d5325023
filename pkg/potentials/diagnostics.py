"""
Integrability diagnostics: Rollnik double integral and decay monitor.
"""
import math
from dataclasses import replace
from typing import Iterable, Optional

import numpy as np
import pandas as pd
from numba import njit, prange

from quadrature import VolumeGrid
from utils.constants import DEFAULT_DECAY_DELTA
from utils.errors import NonRollnikError, PotentialError
from utils.logger import get_logger
from .evaluation import evaluate
from .spec import PotentialKind, PotentialSpec

logger = get_logger(__name__)


@njit(parallel=True, cache=True)
def _rollnik_sum(nodes: np.ndarray, weighted: np.ndarray, diagonal: np.ndarray) -> float:
    """
    Σ_{i≠j} a_i a_j / |r_i - r_j|^2 + Σ_i d_i with a_i = w_i |V_i|.

    Rows are summed in parallel; zero rows are skipped.
    """
    n = nodes.shape[0]
    row_sums = np.zeros(n)
    for i in prange(n):
        if weighted[i] == 0.0:
            continue
        total = 0.0
        xi, yi, zi = nodes[i, 0], nodes[i, 1], nodes[i, 2]
        for j in range(n):
            if j == i or weighted[j] == 0.0:
                continue
            dx = xi - nodes[j, 0]
            dy = yi - nodes[j, 1]
            dz = zi - nodes[j, 2]
            total += weighted[j] / (dx * dx + dy * dy + dz * dz)
        row_sums[i] = weighted[i] * total + diagonal[i]
    return row_sums.sum()


def equal_volume_radius(weights: np.ndarray) -> np.ndarray:
    """Radius ρ_i of the ball whose volume equals the quadrature cell weight w_i."""
    return (3.0 * np.asarray(weights) / (4.0 * np.pi)) ** (1.0 / 3.0)


def rollnik_norm_estimate(p: PotentialSpec, grid: VolumeGrid) -> float:
    """
    Quadrature estimate of ∬ |V(r)| |V(s)| / |r - s|^2 dr ds.

    The singular diagonal cell is replaced by the ball of equal volume, over which
    ∫ ds / |r - s|^2 = 4π ρ_i, giving the term w_i |V_i|^2 4π ρ_i.

    Args:
        p: The potential
        grid: Volume grid covering the support ball

    Returns:
        float: The squared Hilbert–Schmidt norm of the λ-independent kernel modulus

    Raises:
        NonRollnikError: If the estimate is not finite
    """
    if grid.r_max < p.support_radius:
        logger.warning(
            f"Grid radius {grid.r_max:g} does not cover the support radius {p.support_radius:g}"
        )
    modulus = np.abs(evaluate(p, grid.nodes))
    if not np.all(np.isfinite(modulus)):
        raise NonRollnikError(f"{p.describe()} is not finite on the grid nodes")
    weighted = grid.weights * modulus
    diagonal = grid.weights * modulus ** 2 * 4.0 * np.pi * equal_volume_radius(grid.weights)

    value = float(_rollnik_sum(np.ascontiguousarray(grid.nodes), weighted, diagonal))
    if not math.isfinite(value):
        raise NonRollnikError(
            f"Rollnik estimate for {p.describe()} is not finite on {grid.describe()}: "
            "the potential is not Rollnik or the grid is under-resolved"
        )
    logger.debug(f"Rollnik estimate {value:.6e} for {p.describe()}")
    return value


def decay_report(p: PotentialSpec, radii: Iterable[float], delta: Optional[float] = None) -> pd.DataFrame:
    """
    Tabulate |V(r)| |r|^(3+δ) along the +z axis.

    The caller judges boundedness; an increasing column means the O(|r|^(-3-δ))
    decay condition is violated on the sampled range.

    Args:
        p: The potential
        radii: Positive, strictly increasing radii
        delta: Exponent offset δ (defaults to 1)

    Returns:
        pd.DataFrame: Columns "radius" and "monitored"
    """
    delta = DEFAULT_DECAY_DELTA if delta is None else float(delta)
    radii = np.asarray(list(radii), dtype=float)
    if radii.size == 0 or np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise PotentialError("decay_report radii must be positive and strictly increasing")

    # Monitor the untruncated tail when the cut would otherwise hide it
    sampled = p if radii[-1] <= p.support_radius else _untruncated(p, radii[-1])
    points = np.column_stack((np.zeros_like(radii), np.zeros_like(radii), radii))
    monitored = np.abs(evaluate(sampled, points)) * radii ** (3.0 + delta)

    report = pd.DataFrame({"radius": radii, "monitored": monitored})
    if np.any(np.diff(monitored) > 0):
        logger.warning(f"{p.describe()}: |V| r^(3+{delta:g}) grows on the sampled radii")
    return report


def _untruncated(p: PotentialSpec, radius: float) -> PotentialSpec:
    if p.kind in (PotentialKind.SQUARE_WELL, PotentialKind.TABULATED_RADIAL):
        return p
    return replace(p, support_radius=float(radius))
