"""
Potential family definitions.

A PotentialSpec is an immutable description of a real local potential V(r) on R^3.
Use the factory functions (gaussian, yukawa, square_well, tabulated_radial,
gaussian_off_center, zero_potential) rather than the constructor; they fix the
support radius and the symmetry flag consistently.
"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from types import MappingProxyType
from typing import Any, Mapping, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from utils.constants import TRUNCATION_FACTOR
from utils.errors import PotentialError
from utils.logger import get_logger

logger = get_logger(__name__)


class PotentialKind(str, Enum):
    GAUSSIAN = "gaussian"
    YUKAWA = "yukawa"
    SQUARE_WELL = "square_well"
    TABULATED_RADIAL = "tabulated_radial"
    GAUSSIAN_OFF_CENTER = "gaussian_off_center"


@dataclass(frozen=True, eq=False)
class PotentialSpec:
    """
    Real-valued potential with its truncation metadata.

    Attributes:
        kind: Member of PotentialKind
        params: Read-only parameter mapping (g/a, g/mu, V0/a, radii/values, g/a/center)
        support_radius: |V| is treated as zero beyond this radius
        spherically_symmetric: False only for GaussianOffCenter
    """
    kind: PotentialKind
    params: Mapping[str, Any] = field(default_factory=dict)
    support_radius: float = 1.0
    spherically_symmetric: bool = True

    @property
    def discontinuity_radius(self) -> Optional[float]:
        """Radius of a jump in V(|r|), if any (square well edge)."""
        if self.kind is PotentialKind.SQUARE_WELL:
            return float(self.params["a"])
        return None

    @property
    def origin_coefficient(self) -> float:
        """lim_{r->0} r V(r); nonzero only for the Coulomb-like core of the Yukawa form."""
        if self.kind is PotentialKind.YUKAWA:
            return float(self.params["g"])
        return 0.0

    @property
    def is_zero(self) -> bool:
        """True when V vanishes identically."""
        if self.kind is PotentialKind.SQUARE_WELL:
            return float(self.params["V0"]) == 0.0
        if self.kind is PotentialKind.TABULATED_RADIAL:
            return not np.any(np.asarray(self.params["values"]))
        return float(self.params["g"]) == 0.0

    def scaled(self, alpha: float) -> "PotentialSpec":
        """Return the potential alpha * V with the same support and symmetry."""
        params = dict(self.params)
        if self.kind is PotentialKind.SQUARE_WELL:
            params["V0"] = alpha * float(params["V0"])
        elif self.kind is PotentialKind.TABULATED_RADIAL:
            params["values"] = tuple(alpha * np.asarray(params["values"], dtype=float))
        else:
            params["g"] = alpha * float(params["g"])
        return replace(self, params=MappingProxyType(params))

    def describe(self) -> str:
        shown = {k: v for k, v in self.params.items() if k not in ("radii", "values")}
        if self.kind is PotentialKind.TABULATED_RADIAL:
            shown["samples"] = len(self.params["radii"])
        return f"{self.kind.value}({shown}, support_radius={self.support_radius:.6g})"


def _gaussian_cutoff(a: float) -> float:
    # g exp(-R^2/a^2) = TRUNCATION_FACTOR * g
    return a * math.sqrt(-math.log(TRUNCATION_FACTOR))


def _yukawa_cutoff(mu: float) -> float:
    # exp(-mu R) / R = TRUNCATION_FACTOR, one root beyond R = 1/mu
    def excess(radius):
        return -mu * radius - math.log(radius) - math.log(TRUNCATION_FACTOR)

    upper = 1.0 / mu
    while excess(upper) > 0:
        upper *= 2.0
    lower = min(1.0 / mu, 1.0) * 1e-6
    return brentq(excess, lower, upper, xtol=1e-12)


def _checked_support(default: float, requested: Optional[float], label: str) -> float:
    if requested is None:
        return default
    requested = float(requested)
    if requested <= 0:
        raise PotentialError(f"{label}: support_radius must be positive, got {requested}")
    if requested < default:
        logger.warning(
            f"{label}: support_radius {requested:.6g} is below the truncation radius "
            f"{default:.6g}; |V| at the cut exceeds {TRUNCATION_FACTOR:g}*|g|"
        )
    return requested


def _frozen(params: dict) -> Mapping[str, Any]:
    return MappingProxyType(params)


def gaussian(g: float, a: float, support_radius: Optional[float] = None) -> PotentialSpec:
    """V(r) = g exp(-|r|^2 / a^2)."""
    if a <= 0:
        raise PotentialError(f"gaussian: width a must be positive, got {a}")
    support = _checked_support(_gaussian_cutoff(a), support_radius, "gaussian")
    return PotentialSpec(PotentialKind.GAUSSIAN, _frozen({"g": float(g), "a": float(a)}), support, True)


def yukawa(g: float, mu: float, support_radius: Optional[float] = None) -> PotentialSpec:
    """V(r) = g exp(-mu |r|) / |r|."""
    if mu <= 0:
        raise PotentialError(f"yukawa: screening mu must be positive, got {mu}")
    support = _checked_support(_yukawa_cutoff(mu), support_radius, "yukawa")
    return PotentialSpec(PotentialKind.YUKAWA, _frozen({"g": float(g), "mu": float(mu)}), support, True)


def square_well(V0: float, a: float) -> PotentialSpec:
    """V(r) = -V0 for |r| <= a, 0 outside; the support radius is exactly a."""
    if a <= 0:
        raise PotentialError(f"square_well: radius a must be positive, got {a}")
    return PotentialSpec(PotentialKind.SQUARE_WELL, _frozen({"V0": float(V0), "a": float(a)}), float(a), True)


def tabulated_radial(radii: Sequence[float], values: Sequence[float],
                     support_radius: Optional[float] = None) -> PotentialSpec:
    """
    Radial potential from samples, linearly interpolated.

    Args:
        radii: Strictly increasing, non-negative sample radii
        values: V at the sample radii
        support_radius: Cut radius; defaults to the last sample radius and may not exceed it
    """
    radii_arr = np.asarray(radii, dtype=float)
    values_arr = np.asarray(values, dtype=float)
    if radii_arr.ndim != 1 or radii_arr.shape != values_arr.shape or radii_arr.size < 2:
        raise PotentialError("tabulated_radial: radii and values must be equal-length 1D sequences (>= 2 samples)")
    if np.any(radii_arr < 0) or np.any(np.diff(radii_arr) <= 0):
        raise PotentialError("tabulated_radial: radii must be non-negative and strictly increasing")
    if not np.all(np.isfinite(values_arr)):
        raise PotentialError("tabulated_radial: values must be finite")
    support = float(radii_arr[-1]) if support_radius is None else float(support_radius)
    if support <= 0 or support > radii_arr[-1]:
        raise PotentialError(
            f"tabulated_radial: support_radius {support} must lie in (0, {radii_arr[-1]}]"
        )
    params = {"radii": tuple(radii_arr.tolist()), "values": tuple(values_arr.tolist())}
    return PotentialSpec(PotentialKind.TABULATED_RADIAL, _frozen(params), support, True)


def gaussian_off_center(g: float, a: float, center: Sequence[float],
                        support_radius: Optional[float] = None) -> PotentialSpec:
    """V(r) = g exp(-|r - c|^2 / a^2); not spherically symmetric unless c = 0."""
    if a <= 0:
        raise PotentialError(f"gaussian_off_center: width a must be positive, got {a}")
    c = tuple(float(x) for x in center)
    if len(c) != 3:
        raise PotentialError(f"gaussian_off_center: center must have 3 components, got {center!r}")
    default = float(np.linalg.norm(c)) + _gaussian_cutoff(a)
    support = _checked_support(default, support_radius, "gaussian_off_center")
    params = {"g": float(g), "a": float(a), "center": c}
    return PotentialSpec(PotentialKind.GAUSSIAN_OFF_CENTER, _frozen(params), support, False)


def zero_potential(support_radius: float = 1.0) -> PotentialSpec:
    """V ≡ 0 on a ball of the given radius (a zero-strength square well)."""
    return square_well(0.0, support_radius)
