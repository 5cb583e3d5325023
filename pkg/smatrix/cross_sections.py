"""
Total cross sections from the amplitude and from the S spectrum, plus the optical theorem.
"""
import numpy as np

from amplitude import AmplitudeMatrix
from quadrature import SphereGrid
from utils.errors import GridError
from .spectrum import SMatrixSpectrum


def cross_section_double(f: AmplitudeMatrix) -> float:
    """σ = Σ_ab μ_a μ_b |f_ab|^2."""
    mu = f.sphere.weights
    return float(mu @ (np.abs(f.values) ** 2) @ mu)


def cross_section_spectral(spec: SMatrixSpectrum) -> float:
    """
    σ = (4π²/λ) ||Ŝ - I||_F^2 from the eigenpairs.

    Ŝ - I = V B V^{-1} with the cluster block B of the spectrum; the Frobenius norm of that
    product reduces to Σ_j |ν_j - 1|^2 when Ŝ is normal.
    """
    rebuilt = spec.vectors @ spec.block @ spec.inverse
    total = np.linalg.norm(rebuilt, "fro") ** 2
    return float(4.0 * np.pi ** 2 / spec.energy * total)


def cross_section_spectral_diagonal(spec: SMatrixSpectrum) -> float:
    """σ = (4π²/λ) Σ_j |ν_j - 1|^2, exact only for a normal Ŝ."""
    return float(4.0 * np.pi ** 2 / spec.energy * np.sum(np.abs(spec.shifts) ** 2))


def optical_theorem_defect(f: AmplitudeMatrix, sg: SphereGrid) -> float:
    """
    max_b |Im f(ω_b, ω_b) - (√λ/4π) Σ_a μ_a |f(ω_a, ω_b)|^2|, relative to the largest right-hand side.

    Returns 0 for a vanishing amplitude.
    """
    if not f.sphere.same_as(sg):
        raise GridError("amplitude and sphere grid differ")
    integrated = (f.wavenumber / (4.0 * np.pi)) * (sg.weights @ (np.abs(f.values) ** 2))
    forward = f.forward().imag
    scale = max(float(np.max(np.abs(integrated))), float(np.max(np.abs(forward))))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(forward - integrated)) / scale)
