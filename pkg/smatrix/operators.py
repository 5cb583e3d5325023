"""
Discretized T(λ) and S(λ) on the sphere grid.

In weight-symmetrized coordinates the sphere quadrature becomes a plain inner product:

    t_ab = μ² T(ω_a, ω'_b) = -(√λ / 4π²) f_ab,      μ² = √λ / 16π³
    Ŝ_ab = δ_ab - 2πi √μ_a t_ab √μ_b = δ_ab + (i√λ / 2π) √μ_a f_ab √μ_b
"""
from dataclasses import dataclass

import numpy as np

from amplitude import AmplitudeMatrix
from quadrature import SphereGrid
from utils.errors import GridError
from utils.logger import get_logger

logger = get_logger(__name__)


def mu_squared(energy: float) -> float:
    """μ² = √λ / (16 π³)."""
    return float(np.sqrt(energy) / (16.0 * np.pi ** 3))


@dataclass(frozen=True, eq=False)
class TKernel:
    """t(ω_a, ω'_b) = μ² T(ω_a, ω'_b, λ) on the sphere grid."""
    energy: float
    values: np.ndarray
    sphere: SphereGrid

    @property
    def wavenumber(self) -> float:
        return float(np.sqrt(self.energy))


@dataclass(frozen=True, eq=False)
class SOperator:
    """
    Ŝ in weight-symmetrized coordinates.

    Attributes:
        transition: Ŝ - I, kept separately so that small eigenvalue shifts keep full precision
        unitarity_defect: ||Ŝ* Ŝ - I||_2
        normality_defect: ||Ŝ Ŝ* - Ŝ* Ŝ||_2
    """
    energy: float
    transition: np.ndarray
    sphere: SphereGrid
    unitarity_defect: float
    normality_defect: float

    @property
    def matrix(self) -> np.ndarray:
        return self.transition + np.eye(self.transition.shape[0])

    @property
    def wavenumber(self) -> float:
        return float(np.sqrt(self.energy))


def assemble_T(f: AmplitudeMatrix) -> TKernel:
    """t = -(√λ / 4π²) f."""
    if not f.energy > 0:
        raise ValueError(f"assemble_T needs lambda > 0, got {f.energy}")
    return TKernel(f.energy, -(f.wavenumber / (4.0 * np.pi ** 2)) * f.values, f.sphere)


def assemble_S(t: TKernel, sg: SphereGrid) -> SOperator:
    """
    Ŝ = I - 2πi √μ t √μ with its unitarity and normality defects.

    Raises:
        GridError: If t was sampled on another sphere grid
    """
    if not t.sphere.same_as(sg):
        raise GridError("T kernel and sphere grid differ")
    root = np.sqrt(sg.weights)
    transition = -2j * np.pi * root[:, None] * t.values * root[None, :]
    s = transition + np.eye(sg.size)
    gram = s.conj().T @ s
    unitarity = float(np.linalg.norm(gram - np.eye(sg.size), 2))
    normality = float(np.linalg.norm(s @ s.conj().T - gram, 2))
    logger.info(f"S(lambda={t.energy:g}): unitarity defect {unitarity:.3e}, normality defect {normality:.3e}")
    return SOperator(t.energy, transition, sg, unitarity, normality)


def amplitude_from_transition(s: SOperator) -> AmplitudeMatrix:
    """Invert Ŝ - I back to f = (2π / i√λ) μ^{-1/2} (Ŝ - I) μ^{-1/2}."""
    root = np.sqrt(s.sphere.weights)
    values = (2.0 * np.pi / (1j * s.wavenumber)) * s.transition / root[:, None] / root[None, :]
    return AmplitudeMatrix(s.energy, values, s.sphere)
