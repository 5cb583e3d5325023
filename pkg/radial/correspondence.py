"""
Comparison of the 3D S-matrix spectrum with the radial phase shifts.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from smatrix import SMatrixSpectrum, assign_partial_waves
from utils.constants import CORRESPONDENCE_L_MAX, CORRESPONDENCE_TOLERANCE
from utils.logger import get_logger
from .partial_waves import cross_section_single, partial_wave_amplitude, partial_wave_amplitude_from_eigenvalues
from .phase_shifts import PhaseShiftTable

logger = get_logger(__name__)

# a cluster radius below this fraction of the largest shift does not separate two degrees
RESOLUTION_FLOOR = 1e-8


@dataclass(frozen=True, eq=False)
class CorrespondenceReport:
    """
    Per-ℓ comparison of cluster eigenvalues ν_ℓ with S_ℓ = e^{2iδ_ℓ}.

    Attributes:
        table: Columns l, nu_re, nu_im, s_re, s_im, distance, literal_distance, multiplicity, expected,
            resolved (the degree is separated from its neighbours) and overlap
        sigma_single: (angular, partial-wave) single-integral cross sections
        sigma_double: Double-integral cross section of the 3D run, when supplied
        amplitude_route_gap: max |f from ν_ℓ - f from S_ℓ| over a θ grid, relative
    """
    energy: float
    table: pd.DataFrame
    sigma_single: tuple
    sigma_double: Optional[float] = None
    amplitude_route_gap: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def max_distance(self) -> float:
        return float(self.table["distance"].max()) if len(self.table) else 0.0

    @property
    def multiplicities_ok(self) -> bool:
        """Every resolved degree has a cluster of 2ℓ+1 eigenvalues."""
        resolved = self.table[self.table["resolved"]]
        return bool((resolved["multiplicity"] == resolved["expected"]).all())

    @property
    def cross_section_ratio(self) -> Optional[float]:
        """σ_double / (4π σ_single); 1 when the two conventions are reconciled."""
        if self.sigma_double is None:
            return None
        single = self.sigma_single[1]
        if single == 0.0:
            return 1.0 if self.sigma_double == 0.0 else float("inf")
        return float(self.sigma_double / (4.0 * np.pi * single))

    def passed(self, tolerance: float = CORRESPONDENCE_TOLERANCE) -> bool:
        return self.max_distance <= tolerance

    def to_record(self) -> Dict[str, Any]:
        return {
            "lambda": self.energy,
            "max_distance": self.max_distance,
            "multiplicities_ok": self.multiplicities_ok,
            "sigma_single_angular": self.sigma_single[0],
            "sigma_single_partial": self.sigma_single[1],
            "sigma_double": self.sigma_double,
            "cross_section_ratio": self.cross_section_ratio,
            "amplitude_route_gap": self.amplitude_route_gap,
            "per_l": self.table.to_dict(orient="records"),
            "notes": list(self.notes),
        }


def verify_eigen_correspondence(spec: SMatrixSpectrum, t: PhaseShiftTable,
                                max_degree: int = CORRESPONDENCE_L_MAX,
                                sigma_double: Optional[float] = None) -> CorrespondenceReport:
    """
    Assign ℓ clusters in the spectrum and measure |ν_ℓ - e^{2iδ_ℓ}| for ℓ <= max_degree.

    The literal column |ν_ℓ - e^{δ_ℓ}| is carried for comparison with the phase convention
    without the factor 2i.
    """
    if not np.isclose(spec.energy, t.energy, rtol=1e-12, atol=0.0):
        raise ValueError(f"spectrum at lambda={spec.energy} and phase shifts at lambda={t.energy} differ")
    max_degree = min(max_degree, t.l_max)
    notes = []
    try:
        assignment = assign_partial_waves(spec, max_degree)
    except Exception as e:
        logger.error(f"Cluster assignment failed at lambda={spec.energy:g}: {e}")
        notes.append(f"cluster assignment failed: {e}")
        assignment = pd.DataFrame({
            "l": np.arange(max_degree + 1), "nu_re": np.nan, "nu_im": np.nan,
            "multiplicity": 0, "expected": 2 * np.arange(max_degree + 1) + 1, "radius": 0.0, "overlap": 0.0,
        })

    nu = assignment["nu_re"].to_numpy() + 1j * assignment["nu_im"].to_numpy()
    # degrees whose S_ℓ coincide (V ≡ 0, or shifts at roundoff) cannot be told apart
    scale = float(np.max(np.abs(spec.shifts))) if spec.size else 0.0
    resolved = assignment["radius"].to_numpy() > RESOLUTION_FLOOR * scale
    deltas = t.deltas[:max_degree + 1]
    s = np.exp(2j * deltas)
    table = pd.DataFrame({
        "l": assignment["l"].to_numpy(),
        "nu_re": nu.real,
        "nu_im": nu.imag,
        "s_re": s.real,
        "s_im": s.imag,
        "distance": np.abs(nu - s),
        "literal_distance": np.abs(nu - np.exp(deltas)),
        "multiplicity": assignment["multiplicity"].to_numpy(),
        "expected": assignment["expected"].to_numpy(),
        "resolved": resolved,
        "overlap": assignment["overlap"].to_numpy(),
    })

    # amplitude from cluster eigenvalues (ℓ <= max_degree) against the same truncation of S_ℓ
    theta = np.linspace(0.0, np.pi, 61)
    truncated = PhaseShiftTable(t.energy, deltas, t.step, t.match_radius)
    from_s = partial_wave_amplitude(truncated, theta)
    from_nu = partial_wave_amplitude_from_eigenvalues(nu, theta, t.energy)
    scale = float(np.max(np.abs(from_s)))
    gap = float(np.max(np.abs(from_nu - from_s)) / scale) if scale > 0 else float(np.max(np.abs(from_nu)))

    report = CorrespondenceReport(
        energy=t.energy,
        table=table,
        sigma_single=cross_section_single(t),
        sigma_double=sigma_double,
        amplitude_route_gap=gap,
        notes=notes,
    )
    logger.info(
        f"lambda={t.energy:g}: max |nu_l - S_l| = {report.max_distance:.3e} for l <= {max_degree}, "
        f"multiplicities {'match' if report.multiplicities_ok else 'differ from'} 2l+1"
    )
    return report
