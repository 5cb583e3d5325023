"""
Scan for negative-energy eigenvalues λ = -κ^2 through the singularity of I + K(iκ).

At λ = -κ^2 the kernel is real. The detector is the signed ratio
sign(det(I + K)) · σ_min / σ_max: a simple eigenvalue of I + K crossing zero flips the
sign of the determinant, and an even-multiplicity crossing still shows as a deep minimum.
"""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.linalg import svdvals
from scipy.optimize import brentq, minimize_scalar
from tqdm import tqdm

from potentials import PotentialSpec
from quadrature import VolumeGrid
from utils.constants import BOUND_STATE_ACCEPT_RATIO
from utils.logger import get_logger
from .conditioning import identity_plus
from .kernel import assemble_kernel_imaginary

logger = get_logger(__name__)


@dataclass(frozen=True)
class BoundState:
    """A detected bound state."""
    kappa: float
    sigma_ratio: float
    detected_by: str

    @property
    def energy(self) -> float:
        return -self.kappa ** 2


def signed_sigma_ratio(p: PotentialSpec, grid: VolumeGrid, kappa: float) -> float:
    """sign(det(I + K(iκ))) · σ_min / σ_max."""
    kernel = assemble_kernel_imaginary(p, grid, kappa)
    if kernel.is_zero:
        return 1.0
    a = identity_plus(kernel.entries)
    sign, _ = np.linalg.slogdet(a)
    values = svdvals(a, check_finite=False)
    ratio = values[-1] / values[0]
    return float(ratio if sign >= 0 else -ratio)


def _local_minima(values: np.ndarray) -> List[int]:
    magnitude = np.abs(values)
    return [i for i in range(1, magnitude.size - 1)
            if magnitude[i] < magnitude[i - 1] and magnitude[i] <= magnitude[i + 1]]


def bound_state_scan(p: PotentialSpec, grid: VolumeGrid, kappa_range: Tuple[float, float],
                     n_samples: int, accept_ratio: float = BOUND_STATE_ACCEPT_RATIO,
                     xtol: float = 1e-10) -> List[BoundState]:
    """
    Locate κ* in kappa_range where I + K(iκ*) is singular.

    Sign changes of the signed ratio are refined with Brent's method; interior minima
    without a sign change are refined with a bounded scalar minimization and kept when
    the refined ratio falls below accept_ratio.

    Args:
        p: The potential
        grid: Volume grid (the scan assembles one dense real matrix per sample)
        kappa_range: (κ_lo, κ_hi) with 0 < κ_lo < κ_hi
        n_samples: Number of equally spaced samples (>= 3)

    Returns:
        list of BoundState in ascending κ
    """
    lo, hi = float(kappa_range[0]), float(kappa_range[1])
    if not 0 < lo < hi:
        raise ValueError(f"kappa_range must satisfy 0 < lo < hi, got {kappa_range}")
    if n_samples < 3:
        raise ValueError(f"bound_state_scan needs at least 3 samples, got {n_samples}")
    if p.is_zero:
        logger.info("Zero potential: no bound states")
        return []

    kappas = np.linspace(lo, hi, n_samples)
    values = np.array([
        signed_sigma_ratio(p, grid, kappa)
        for kappa in tqdm(kappas, desc="Bound-state scan", unit="kappa", leave=False, disable=None)
    ])

    def signed(kappa):
        return signed_sigma_ratio(p, grid, kappa)

    found: List[BoundState] = []
    for i in range(n_samples - 1):
        if values[i] == 0.0:
            found.append(BoundState(float(kappas[i]), 0.0, "exact"))
        elif values[i] * values[i + 1] < 0:
            root = brentq(signed, kappas[i], kappas[i + 1], xtol=xtol)
            found.append(BoundState(float(root), abs(signed(root)), "sign_change"))

    for i in _local_minima(values):
        if values[i - 1] * values[i + 1] < 0 or values[i - 1] * values[i] < 0 or values[i] * values[i + 1] < 0:
            continue
        result = minimize_scalar(lambda kappa: abs(signed(kappa)), bounds=(kappas[i - 1], kappas[i + 1]),
                                 method="bounded", options={"xatol": xtol})
        if result.fun < accept_ratio:
            found.append(BoundState(float(result.x), float(result.fun), "minimum"))

    found.sort(key=lambda state: state.kappa)
    deduplicated: List[BoundState] = []
    for state in found:
        if deduplicated and abs(state.kappa - deduplicated[-1].kappa) <= 1e-6 * max(1.0, state.kappa):
            continue
        deduplicated.append(state)

    for state in deduplicated:
        logger.info(f"Bound state at kappa={state.kappa:.10f} (lambda={state.energy:.10f}, {state.detected_by})")
    if not deduplicated:
        logger.info(f"No bound state with kappa in [{lo:g}, {hi:g}]")
    return deduplicated
