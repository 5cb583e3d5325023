"""
Exception hierarchy shared by every ls_scatter package.
"""
from typing import Optional


class ScatteringError(Exception):
    """Base class for all ls_scatter errors."""


class ConfigError(ScatteringError):
    """Invalid or missing run-configuration value."""


class PotentialError(ScatteringError):
    """Invalid potential parameters or an evaluation outside the potential's table."""


class NonRollnikError(PotentialError):
    """The Rollnik double integral came out non-finite."""


class GridError(ScatteringError):
    """Invalid grid parameters, or tables built on different grids."""


class ExceptionalValueError(ScatteringError):
    """
    I + K(λ) is numerically singular at the requested energy.

    Attributes:
        sigma_min: Smallest singular value of I + K
        sigma_max: Largest singular value of I + K
        energy: The energy λ at which the solve was refused
    """

    def __init__(self, sigma_min: float, sigma_max: float, energy: float):
        self.sigma_min = sigma_min
        self.sigma_max = sigma_max
        self.energy = energy
        super().__init__(
            f"I+K(lambda) is near-singular at lambda={energy:.6g}: "
            f"sigma_min={sigma_min:.3e}, sigma_max={sigma_max:.3e}"
        )


class SpectrumError(ScatteringError):
    """
    Eigendecomposition failed or the spectrum is incomplete.

    Attributes:
        condition: Condition estimate of the eigenvector matrix, when available
    """

    def __init__(self, message: str, condition: Optional[float] = None):
        self.condition = condition
        if condition is not None:
            message = f"{message} (eigenvector condition {condition:.3e})"
        super().__init__(message)
