"""
Pointwise evaluation of potentials and their sign/modulus split.
"""
from typing import Tuple

import numpy as np

from utils.errors import PotentialError
from .spec import PotentialKind, PotentialSpec


def _radial_values(p: PotentialSpec, radius: np.ndarray) -> np.ndarray:
    """V as a function of |r| for the spherically symmetric kinds; no truncation applied."""
    if p.kind is PotentialKind.GAUSSIAN:
        return p.params["g"] * np.exp(-(radius / p.params["a"]) ** 2)
    if p.kind is PotentialKind.YUKAWA:
        with np.errstate(divide="ignore", invalid="ignore"):
            values = p.params["g"] * np.exp(-p.params["mu"] * radius) / radius
        return values
    if p.kind is PotentialKind.SQUARE_WELL:
        return np.where(radius <= p.params["a"], -p.params["V0"], 0.0)
    if p.kind is PotentialKind.TABULATED_RADIAL:
        table_r = np.asarray(p.params["radii"])
        inside = radius <= p.support_radius
        if np.any(inside & (radius < table_r[0])):
            bad = float(np.min(radius[inside]))
            raise PotentialError(
                f"tabulated_radial: radius {bad:.6g} lies below the first table radius {table_r[0]:.6g}"
            )
        return np.interp(radius, table_r, np.asarray(p.params["values"]))
    raise PotentialError(f"{p.kind.value} is not a radial potential")


def evaluate_radial(p: PotentialSpec, radius) -> np.ndarray:
    """
    Evaluate a spherically symmetric potential at radii |r|.

    Args:
        p: Spherically symmetric potential
        radius: Scalar or array of radii (>= 0)

    Returns:
        np.ndarray: V(|r|), exactly 0 beyond the support radius
    """
    if not p.spherically_symmetric:
        raise PotentialError(f"{p.kind.value} is not spherically symmetric")
    radius = np.asarray(radius, dtype=float)
    values = np.zeros_like(radius)
    inside = radius <= p.support_radius
    if np.any(inside):
        values[inside] = _radial_values(p, radius[inside])
    return values if values.ndim else values[()]


def evaluate(p: PotentialSpec, points) -> np.ndarray:
    """
    Evaluate V at points of R^3.

    Args:
        p: The potential
        points: Array of shape (3,) or (..., 3)

    Returns:
        np.ndarray: V at each point (shape points.shape[:-1]), exactly 0 beyond the support radius
    """
    points = np.asarray(points, dtype=float)
    if points.shape[-1] != 3:
        raise PotentialError(f"points must have a trailing dimension of 3, got shape {points.shape}")
    radius = np.linalg.norm(points, axis=-1)

    if p.kind is not PotentialKind.GAUSSIAN_OFF_CENTER:
        return evaluate_radial(p, radius)

    offset = points - np.asarray(p.params["center"])
    values = p.params["g"] * np.exp(-np.sum(offset ** 2, axis=-1) / p.params["a"] ** 2)
    values = np.where(radius <= p.support_radius, values, 0.0)
    return values if values.ndim else values[()]


def sign_and_sqrt(p: PotentialSpec, points) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split V into W = sign(V) and |V|^(1/2), so that W * s * s reproduces V.

    Args:
        p: The potential
        points: Array of shape (3,) or (..., 3)

    Returns:
        Tuple[np.ndarray, np.ndarray]: (w in {-1, 0, +1}, s >= 0)
    """
    values = evaluate(p, points)
    return np.sign(values), np.sqrt(np.abs(values))
