"""
Spherical Bessel functions j_ℓ, y_ℓ and their derivatives.

j_ℓ uses Miller's downward recurrence normalised against the closed form of j_0 or j_1;
y_ℓ uses the upward recurrence, which is stable for the irregular solution.
"""
import math
from typing import Tuple

import numpy as np

_RESCALE_LIMIT = 1e250


def _downward_j(max_degree: int, x: float) -> np.ndarray:
    # start well past the turning degree ℓ ≈ x so that j_start is negligible
    start = max_degree + math.ceil(x) + 20 + math.ceil(math.sqrt(40.0 * x))
    values = np.zeros(start + 2)
    values[start] = 1e-30
    for ell in range(start, 0, -1):
        values[ell - 1] = (2 * ell + 1) / x * values[ell] - values[ell + 1]
        if abs(values[ell - 1]) > _RESCALE_LIMIT:
            values[ell - 1:] /= _RESCALE_LIMIT

    j0 = math.sin(x) / x
    j1 = math.sin(x) / x ** 2 - math.cos(x) / x
    # Normalise on whichever closed form is further from a zero
    if abs(j0) >= abs(j1):
        scale = j0 / values[0]
    else:
        scale = j1 / values[1]
    return values[:max_degree + 1] * scale


def _upward_y(max_degree: int, x: float) -> np.ndarray:
    values = np.empty(max(max_degree + 1, 2))
    values[0] = -math.cos(x) / x
    values[1] = -math.cos(x) / x ** 2 - math.sin(x) / x
    for ell in range(1, max_degree):
        values[ell + 1] = (2 * ell + 1) / x * values[ell] - values[ell - 1]
    return values[:max_degree + 1]


def _derivatives(values: np.ndarray, x: float, first_order_minus_one: float) -> np.ndarray:
    # f_ℓ' = f_{ℓ-1} - (ℓ+1)/x f_ℓ, with f_{-1} supplied for ℓ = 0
    degrees = np.arange(values.size)
    lower = np.concatenate(([first_order_minus_one], values[:-1]))
    return lower - (degrees + 1) / x * values


def spherical_bessel_table(max_degree: int, x: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    j_ℓ, y_ℓ, j_ℓ', y_ℓ' for ℓ = 0..L at a single argument.

    Args:
        max_degree: L >= 0
        x: Argument > 0

    Returns:
        Tuple of four arrays of length L + 1

    Raises:
        ValueError: If x <= 0
    """
    if not x > 0:
        raise ValueError(f"spherical Bessel argument must be positive, got {x}")
    if max_degree < 0:
        raise ValueError(f"degree must be non-negative, got {max_degree}")
    x = float(x)
    j = _downward_j(max_degree, x)
    y = _upward_y(max_degree, x)
    # j_{-1} = cos x / x, y_{-1} = sin x / x
    dj = _derivatives(j, x, math.cos(x) / x)
    dy = _derivatives(y, x, math.sin(x) / x)
    return j, y, dj, dy


def spherical_bessel(ell: int, x: float) -> Tuple[float, float, float, float]:
    """
    (j_ℓ(x), y_ℓ(x), j_ℓ'(x), y_ℓ'(x)) for x > 0.
    """
    j, y, dj, dy = spherical_bessel_table(ell, x)
    return float(j[ell]), float(y[ell]), float(dj[ell]), float(dy[ell])
