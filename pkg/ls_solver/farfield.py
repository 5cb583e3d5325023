"""
Far-field check of the amplitude against the solved wave.

φ(Rω) - e^{ik·Rω} = -(1/4π) Σ_i w_i e^{ik|Rω - r_i|}/|Rω - r_i| W_i s_i ψ_i is compared
with f(ω, ω') e^{ikR}/R at the sphere-grid directions; R·|difference| must decay with R.
"""
from typing import TYPE_CHECKING, Iterable, Optional

import numpy as np
import pandas as pd

from utils.constants import KERNEL_BLOCK_ROWS
from utils.errors import GridError
from utils.logger import get_logger
from .solve import WaveTable

if TYPE_CHECKING:
    from amplitude import AmplitudeMatrix

logger = get_logger(__name__)


def scattered_wave(w: WaveTable, points: np.ndarray) -> np.ndarray:
    """
    Scattered part φ - e^{ik·r} at arbitrary points outside the support.

    Returns:
        np.ndarray: P × M complex, one column per incident direction
    """
    k = w.wavenumber
    weighted_psi = w.source_weights[:, None] * w.psi
    out = np.empty((points.shape[0], w.psi.shape[1]), dtype=np.complex128)
    for start in range(0, points.shape[0], KERNEL_BLOCK_ROWS):
        block = points[start:start + KERNEL_BLOCK_ROWS]
        d = np.linalg.norm(block[:, None, :] - w.grid.nodes[None, :, :], axis=2)
        out[start:start + KERNEL_BLOCK_ROWS] = -(np.exp(1j * k * d) / d) @ weighted_psi / (4.0 * np.pi)
    return out


def farfield_check(w: WaveTable, f: "AmplitudeMatrix", sample_radii: Iterable[float],
                   support_radius: Optional[float] = None) -> pd.DataFrame:
    """
    R · max |φ - e^{ik·r} - f e^{ikR}/R| over outgoing and incident directions, per radius.

    Args:
        w: Solved wave table
        f: Amplitude matrix on the same sphere grid as the incident directions
        sample_radii: Radii R, each beyond the support
        support_radius: Support radius of V; defaults to the grid radius

    Returns:
        pd.DataFrame: columns radius, scaled_residual

    Raises:
        GridError: If a sample radius lies inside the support or the grids differ
    """
    if not f.sphere.same_as(w.incident):
        raise GridError("amplitude and wave table live on different sphere grids")
    support = w.grid.r_max if support_radius is None else support_radius
    radii = [float(r) for r in sample_radii]
    for radius in radii:
        if radius <= support:
            raise GridError(f"sample radius {radius:g} lies inside the support radius {support:g}")

    k = w.wavenumber
    directions = f.sphere.directions
    rows = []
    for radius in radii:
        scattered = scattered_wave(w, radius * directions)
        residual = scattered - f.values * np.exp(1j * k * radius) / radius
        scaled = float(radius * np.max(np.abs(residual))) if residual.size else 0.0
        rows.append({"radius": radius, "scaled_residual": scaled})
        logger.debug(f"Far field at R={radius:g}: R*residual={scaled:.3e}")

    table = pd.DataFrame(rows, columns=["radius", "scaled_residual"])
    if len(table) > 1 and not np.all(np.diff(table["scaled_residual"].to_numpy()) <= 0):
        logger.warning("Far-field residual does not decrease with the sample radius")
    return table
