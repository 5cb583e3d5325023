"""
Legendre polynomials by the upward Bonnet recurrence.
"""
import numpy as np
import pandas as pd

from quadrature import ThetaRule
from utils.errors import GridError


def legendre_table(max_degree: int, x) -> np.ndarray:
    """
    P_0 .. P_L at the query points.

    Args:
        max_degree: L >= 0
        x: Scalar or array with |x| <= 1

    Returns:
        np.ndarray: Shape (L + 1,) + shape(x)

    Raises:
        ValueError: If any |x| > 1 or L < 0
    """
    x = np.asarray(x, dtype=float)
    if max_degree < 0:
        raise ValueError(f"Legendre degree must be non-negative, got {max_degree}")
    if np.any(np.abs(x) > 1.0):
        raise ValueError("Legendre argument must satisfy |x| <= 1")

    table = np.empty((max_degree + 1,) + x.shape)
    table[0] = 1.0
    if max_degree >= 1:
        table[1] = x
    for ell in range(1, max_degree):
        # (ℓ+1) P_{ℓ+1} = (2ℓ+1) x P_ℓ - ℓ P_{ℓ-1}
        table[ell + 1] = ((2 * ell + 1) * x * table[ell] - ell * table[ell - 1]) / (ell + 1)
    return table


def legendre_p(ell: int, x):
    """
    P_ℓ(x) for |x| <= 1.

    Returns:
        float or np.ndarray matching the shape of x
    """
    value = legendre_table(ell, x)[ell]
    return value if value.ndim else float(value)


def legendre_norm_integral(ell: int, rule: ThetaRule) -> float:
    """
    Numerical ∫_0^π P_ℓ(cos θ)^2 sin θ dθ on the given polar rule.

    The rule must resolve degree 2ℓ in cos θ (build_theta_rule(n) with n > ℓ).
    """
    if 2 * rule.theta.size - 1 < 2 * ell:
        raise GridError(f"theta rule with {rule.theta.size} nodes does not resolve degree {2 * ell}")
    values = legendre_p(ell, np.cos(rule.theta))
    return float(np.sum(rule.weights * values ** 2 * np.sin(rule.theta)))


def legendre_norm_audit(max_degree: int, rule: ThetaRule) -> pd.DataFrame:
    """
    Compare the numerical norm integral with 2/(2ℓ+1) and with the value ℓ/2 + 1.

    The second column is the standard normalization. The third is a commonly misprinted form
    that matches no degree; reports carry it next to the numerical value as a contrast.
    """
    degrees = np.arange(max_degree + 1)
    numerical = np.array([legendre_norm_integral(int(ell), rule) for ell in degrees])
    return pd.DataFrame({
        "l": degrees,
        "numerical": numerical,
        "standard": 2.0 / (2.0 * degrees + 1.0),
        "literal": degrees / 2.0 + 1.0,
    })
