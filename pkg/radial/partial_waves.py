"""
Partial-wave amplitude series and the two single-integral cross-section routes.
"""
from typing import Optional, Sequence, Tuple

import numpy as np

from quadrature import ThetaRule, build_theta_rule
from specfun import legendre_table
from .phase_shifts import PhaseShiftTable


def _series(channel: np.ndarray, theta, energy: float):
    # (1 / 2i√λ) Σ (2ℓ+1) c_ℓ P_ℓ(cos θ)
    theta = np.asarray(theta, dtype=float)
    degrees = np.arange(channel.size)
    table = legendre_table(channel.size - 1, np.cos(theta))
    coefficients = (2 * degrees + 1) * channel
    values = np.tensordot(coefficients, table, axes=(0, 0)) / (2j * np.sqrt(energy))
    return values if values.ndim else complex(values)


def _checked_energy(t: PhaseShiftTable, energy: Optional[float]) -> float:
    if energy is None:
        return t.energy
    if not np.isclose(energy, t.energy, rtol=1e-12, atol=0.0):
        raise ValueError(f"table was computed at lambda={t.energy}, asked for lambda={energy}")
    return float(energy)


def partial_wave_amplitude(t: PhaseShiftTable, theta, energy: Optional[float] = None):
    """
    f(θ, λ) = (1 / 2i√λ) Σ_ℓ (2ℓ+1)(S_ℓ - 1) P_ℓ(cos θ), truncated at L_max.

    Returns:
        complex or np.ndarray matching theta
    """
    energy = _checked_energy(t, energy)
    return _series(t.s_matrix - 1.0, theta, energy)


def partial_wave_amplitude_from_eigenvalues(nu_by_l: Sequence[complex], theta, energy: float):
    """The same series with S eigenvalues ν_ℓ in place of S_ℓ."""
    nu = np.asarray(nu_by_l, dtype=np.complex128)
    return _series(nu - 1.0, theta, energy)


def theta_rule_for(t: PhaseShiftTable) -> ThetaRule:
    """Polar rule exact for |f|² of a series truncated at L_max."""
    return build_theta_rule(t.l_max + 2)


def cross_section_from_samples(rule: ThetaRule, values) -> float:
    """2π ∫ |f(θ)|² sin θ dθ from samples on a polar rule."""
    values = np.asarray(values)
    return float(2.0 * np.pi * np.sum(rule.weights * np.abs(values) ** 2 * np.sin(rule.theta)))


def partial_wave_sum(t: PhaseShiftTable) -> float:
    """(4π / λ) Σ_ℓ (2ℓ+1) sin² δ_ℓ."""
    degrees = np.arange(t.l_max + 1)
    return float(4.0 * np.pi / t.energy * np.sum((2 * degrees + 1) * np.sin(t.deltas) ** 2))


def cross_section_single(t: PhaseShiftTable, rule: Optional[ThetaRule] = None) -> Tuple[float, float]:
    """
    Both single-integral cross-section routes.

    Returns:
        Tuple (angular quadrature of |f|², partial-wave sum)
    """
    rule = theta_rule_for(t) if rule is None else rule
    angular = cross_section_from_samples(rule, partial_wave_amplitude(t, rule.theta))
    return angular, partial_wave_sum(t)
