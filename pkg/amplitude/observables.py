"""
Observables and symmetry diagnostics derived from an amplitude matrix.
"""
import numpy as np
import pandas as pd

from utils.logger import get_logger
from .matrix import AmplitudeMatrix

logger = get_logger(__name__)


def forward_incident_index(f: AmplitudeMatrix) -> int:
    """Index of the incident node closest to +z."""
    return int(np.argmax(f.sphere.directions[:, 2]))


def differential_cross_section(f: AmplitudeMatrix, b: int) -> pd.DataFrame:
    """
    |f(ω_a, ω'_b)|^2 for every outgoing direction.

    Returns:
        pd.DataFrame: columns a, x, y, z, cos_angle, angle, dcs
    """
    if not 0 <= b < f.size:
        raise IndexError(f"incident index {b} outside 0..{f.size - 1}")
    directions = f.sphere.directions
    cos_angle = np.clip(directions @ directions[b], -1.0, 1.0)
    return pd.DataFrame({
        "a": np.arange(f.size),
        "x": directions[:, 0],
        "y": directions[:, 1],
        "z": directions[:, 2],
        "cos_angle": cos_angle,
        "angle": np.arccos(cos_angle),
        "dcs": np.abs(f.values[:, b]) ** 2,
    })


def reciprocity_defect(f: AmplitudeMatrix) -> float:
    """max_ab |f(ω_a, ω'_b) - f(-ω'_b, -ω_a)|."""
    antipodes = f.sphere.antipodes
    swapped = f.values[np.ix_(antipodes, antipodes)].T
    return float(np.max(np.abs(f.values - swapped)))


def rotational_spread(f: AmplitudeMatrix, decimals: int = 10) -> float:
    """
    Largest spread of f among direction pairs that share the same ω·ω'.

    Zero for a rotation-invariant amplitude sampled on an exact grid.
    """
    cosines = np.round(f.sphere.directions @ f.sphere.directions.T, decimals).ravel()
    frame = pd.DataFrame({"c": cosines, "re": f.values.real.ravel(), "im": f.values.imag.ravel()})
    grouped = frame.groupby("c")
    spread = np.hypot(grouped["re"].max() - grouped["re"].min(), grouped["im"].max() - grouped["im"].min())
    return float(spread.max())


def minimum_forward_imaginary(f: AmplitudeMatrix) -> float:
    """min_a Im f(ω_a, ω_a); non-negative when the optical theorem holds."""
    return float(np.min(f.forward().imag))
