"""
Phase shifts by outward integration and two-point Riccati–Bessel matching.

Beyond the support u(r) ∝ r (j_ℓ(kr) cos δ - y_ℓ(kr) sin δ), so two samples u_1, u_2 at
r_1 < r_2 a quarter wavelength apart give

    tan δ = (u_2 r_1 j_ℓ(k r_1) - u_1 r_2 j_ℓ(k r_2)) / (u_2 r_1 y_ℓ(k r_1) - u_1 r_2 y_ℓ(k r_2))
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from potentials import PotentialSpec, evaluate_radial
from specfun import spherical_bessel
from utils.constants import DEFAULT_L_MAX, L_MAX_CEILING, TAIL_TOLERANCE
from utils.errors import PotentialError
from utils.logger import get_logger
from .numerov import choose_step, integrate, match_radius

logger = get_logger(__name__)

# extra samples appended per extension round when the tail criterion fails
L_MAX_EXTENSION = 4


@dataclass(frozen=True, eq=False)
class PhaseShiftTable:
    """
    δ_ℓ(λ) for ℓ = 0..L_max on the principal branch (-π/2, π/2].

    Attributes:
        energy: λ
        deltas: Phase shifts, index ℓ
        step: Numerov step used
        match_radius: Outer matching radius
    """
    energy: float
    deltas: np.ndarray
    step: float = 0.0
    match_radius: float = 0.0

    @property
    def l_max(self) -> int:
        return self.deltas.size - 1

    @property
    def wavenumber(self) -> float:
        return float(np.sqrt(self.energy))

    @property
    def s_matrix(self) -> np.ndarray:
        """S_ℓ = e^{2iδ_ℓ}."""
        return np.exp(2j * self.deltas)

    @property
    def tail(self) -> float:
        return float(abs(self.deltas[-1]))

    def converged(self, tolerance: float = TAIL_TOLERANCE) -> bool:
        return self.tail < tolerance

    def frame(self) -> pd.DataFrame:
        """Columns l, delta, s_re, s_im."""
        s = self.s_matrix
        return pd.DataFrame({
            "l": np.arange(self.l_max + 1),
            "delta": self.deltas,
            "s_re": s.real,
            "s_im": s.imag,
        })


def fold_principal(delta: float) -> float:
    """Map an angle onto (-π/2, π/2] modulo π."""
    folded = delta - math.pi * math.floor(delta / math.pi + 0.5)
    if folded <= -math.pi / 2:
        folded += math.pi
    return folded


def matching_span(energy: float, step: float) -> int:
    """Steps between the two matching samples, about a quarter wavelength."""
    return max(1, int(round(0.5 * math.pi / (math.sqrt(energy) * step))))


def _match(run_ratio: float, r1: float, r2: float, k: float, ell: int) -> tuple:
    if abs(run_ratio) > 1.0:
        u1, u2 = 1.0 / run_ratio, 1.0
    else:
        u1, u2 = 1.0, run_ratio
    j1, y1, _, _ = spherical_bessel(ell, k * r1)
    j2, y2, _, _ = spherical_bessel(ell, k * r2)
    numerator = u2 * r1 * j1 - u1 * r2 * j2
    denominator = u2 * r1 * y1 - u1 * r2 * y2
    return numerator, denominator


def phase_shift(p: PotentialSpec, ell: int, energy: float, step: Optional[float] = None) -> float:
    """
    δ_ℓ(λ) for a spherically symmetric potential.

    Args:
        p: Spherically symmetric potential
        ell: Angular momentum ℓ >= 0
        energy: λ > 0
        step: Numerov step; chosen from the potential range and wavelength when omitted

    Returns:
        float: δ_ℓ in (-π/2, π/2]

    Raises:
        PotentialError: If p is not spherically symmetric
    """
    if not p.spherically_symmetric:
        raise PotentialError(f"{p.kind.value} is not spherically symmetric")
    if not energy > 0:
        raise ValueError(f"phase_shift needs lambda > 0, got {energy}")
    if ell < 0:
        raise ValueError(f"angular momentum must be non-negative, got {ell}")
    if p.is_zero:
        return 0.0

    k = math.sqrt(energy)
    h = choose_step(p, energy) if step is None else float(step)
    radius = match_radius(p, energy)
    span = matching_span(energy, h)
    for _ in range(4):
        run = integrate(p, ell, energy, radius, step=h, span=span)
        numerator, denominator = _match(run.gain, run.span_radius, run.radius, k, ell)
        scale = max(abs(numerator), abs(denominator))
        if scale > 0 and math.isfinite(scale):
            return fold_principal(math.atan2(numerator, denominator))
        # degenerate matching pair: move a quarter wavelength out
        radius += 0.5 * math.pi / k
        logger.debug(f"l={ell}: re-matching at R={radius:g}")
    raise PotentialError(f"phase shift matching failed for l={ell} at lambda={energy:g}")


def phase_shift_table(p: PotentialSpec, energy: float, l_max: Optional[int] = None,
                      tail_tolerance: float = TAIL_TOLERANCE, ceiling: int = L_MAX_CEILING,
                      step: Optional[float] = None) -> PhaseShiftTable:
    """
    δ_0 .. δ_Lmax, extending L_max until |δ_Lmax| < tail_tolerance or the ceiling is reached.
    """
    l_max = DEFAULT_L_MAX if l_max is None else int(l_max)
    h = choose_step(p, energy) if step is None else float(step)
    deltas = [phase_shift(p, ell, energy, step=h)
              for ell in tqdm(range(l_max + 1), desc="Phase shifts", unit="l", leave=False, disable=None)]
    while abs(deltas[-1]) >= tail_tolerance and len(deltas) - 1 < ceiling:
        start = len(deltas)
        stop = min(start + L_MAX_EXTENSION, ceiling + 1)
        deltas.extend(phase_shift(p, ell, energy, step=h) for ell in range(start, stop))
        logger.warning(f"lambda={energy:g}: extended L_max to {len(deltas) - 1} (|delta_L|={abs(deltas[-1]):.2e})")

    table = PhaseShiftTable(float(energy), np.array(deltas), h, match_radius(p, energy))
    if not table.converged(tail_tolerance):
        logger.warning(f"lambda={energy:g}: phase-shift tail {table.tail:.2e} above {tail_tolerance:g} at L_max={table.l_max}")
    logger.info(f"Phase shifts at lambda={energy:g}: L_max={table.l_max}, delta_0={table.deltas[0]:.10f}")
    return table


def track_branch(deltas: np.ndarray) -> np.ndarray:
    """Continuous branch of δ along an ordered energy list (unwrap with period π)."""
    return np.unwrap(2.0 * np.asarray(deltas, dtype=float), axis=0) / 2.0


def born_phase_shift(p: PotentialSpec, ell: int, energy: float, n_nodes: int = 400) -> float:
    """
    First-order phase shift -k ∫_0^R V(r) r² j_ℓ(kr)² dr, Gauss–Legendre on [0, R] split at any jump.
    """
    if not p.spherically_symmetric:
        raise PotentialError(f"{p.kind.value} is not spherically symmetric")
    k = math.sqrt(energy)
    edges = [0.0, p.support_radius]
    if p.discontinuity_radius is not None and p.discontinuity_radius < p.support_radius:
        edges.insert(1, p.discontinuity_radius)
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        r = 0.5 * (hi - lo) * (x + 1.0) + lo
        weights = 0.5 * (hi - lo) * w
        j = np.array([spherical_bessel(ell, k * radius)[0] for radius in r])
        total += float(np.sum(weights * evaluate_radial(p, r) * r ** 2 * j ** 2))
    return -k * total


def count_bound_states_s_wave(p: PotentialSpec, step: Optional[float] = None) -> int:
    """
    Number of ℓ = 0 bound states: zeros of the zero-energy regular solution on (0, ∞).

    Zeros inside the support are counted during integration; beyond it u is linear and
    has one more zero when 0 < u(R) / u(R - h) < 1.
    """
    if not p.spherically_symmetric:
        raise PotentialError(f"{p.kind.value} is not spherically symmetric")
    if p.is_zero:
        return 0
    run = integrate(p, 0, 0.0, p.support_radius, step=step)
    count = run.nodes + (1 if 0.0 < run.ratio < 1.0 else 0)
    logger.info(f"{p.describe()}: {count} s-wave bound state(s) from zero-energy node count")
    return count
