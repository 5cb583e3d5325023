"""
Radial, spherical and product volume quadrature grids.

Every integral in the pipeline is a weighted sum over one of these grids.
Grids are immutable: their arrays are flagged read-only after construction.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from utils.errors import GridError
from utils.logger import get_logger

logger = get_logger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Gauss–Legendre rule on [0, r_max]; weights carry no r^2 Jacobian."""
    nodes: np.ndarray
    weights: np.ndarray
    r_max: float

    @property
    def size(self) -> int:
        return self.nodes.size

    def integrate(self, values) -> float:
        return np.sum(self.weights * np.asarray(values))


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """
    Product Gauss(cos θ) × uniform(φ) rule on the unit sphere.

    Node a = i_theta * n_phi + i_phi. The nodes double as the direction set on which
    amplitudes and S(λ) are sampled; `antipodes[a]` is the index of -ω_a.
    """
    directions: np.ndarray
    weights: np.ndarray
    n_theta: int
    n_phi: int
    cos_theta: np.ndarray
    phi: np.ndarray
    antipodes: np.ndarray

    @property
    def size(self) -> int:
        return self.weights.size

    def integrate(self, values) -> complex:
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))

    def same_as(self, other: "SphereGrid") -> bool:
        return (self.n_theta, self.n_phi) == (other.n_theta, other.n_phi)


@dataclass(frozen=True, eq=False)
class ThetaRule:
    """Polar-angle rule with weights for dθ on [0, π] (sin θ already divided out)."""
    theta: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True, eq=False)
class VolumeGrid:
    """Product rule on the ball |r| <= r_max; weights include r^2 and the solid angle."""
    nodes: np.ndarray
    weights: np.ndarray
    radii: np.ndarray
    n_r: int
    n_theta: int
    n_phi: int
    r_max: float

    @property
    def size(self) -> int:
        return self.weights.size

    def integrate(self, values) -> complex:
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))

    def describe(self) -> str:
        return f"VolumeGrid(n_r={self.n_r}, n_theta={self.n_theta}, n_phi={self.n_phi}, R_max={self.r_max:g}, N={self.size})"


def build_radial_grid(r_max: float, n: int) -> RadialGrid:
    """
    Gauss–Legendre nodes and weights mapped from [-1, 1] to [0, r_max].

    Args:
        r_max: Outer radius (> 0)
        n: Number of nodes (>= 2); exact for polynomials of degree 2n - 1

    Returns:
        RadialGrid: Strictly increasing interior nodes
    """
    if not r_max > 0:
        raise GridError(f"R_max must be positive, got {r_max}")
    if n < 2:
        raise GridError(f"radial grid needs at least 2 nodes, got {n}")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * r_max
    return RadialGrid(_frozen(half * (x + 1.0)), _frozen(half * w), float(r_max))


def build_sphere_grid(n_theta: int, n_phi: int) -> SphereGrid:
    """
    Product rule: Gauss–Legendre in cos θ, uniform trapezoid in φ.

    Args:
        n_theta: Polar nodes (>= 2)
        n_phi: Azimuthal nodes, even so that the grid is closed under ω -> -ω

    Returns:
        SphereGrid: weights μ_a = w_θ · 2π / n_phi summing to 4π
    """
    if n_theta < 2:
        raise GridError(f"n_theta must be at least 2, got {n_theta}")
    if n_phi < 2 or n_phi % 2:
        raise GridError(f"n_phi must be even and at least 2 (antipodal closure), got {n_phi}")

    x, w = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    sin_theta = np.sqrt(1.0 - x ** 2)

    cos_t = np.repeat(x, n_phi)
    sin_t = np.repeat(sin_theta, n_phi)
    phi_a = np.tile(phi, n_theta)
    directions = np.column_stack((sin_t * np.cos(phi_a), sin_t * np.sin(phi_a), cos_t))
    weights = np.repeat(w, n_phi) * (2.0 * np.pi / n_phi)

    # -ω: cos θ -> -cos θ (Gauss nodes are symmetric), φ -> φ + π
    i_theta = np.repeat(np.arange(n_theta), n_phi)
    i_phi = np.tile(np.arange(n_phi), n_theta)
    antipodes = (n_theta - 1 - i_theta) * n_phi + (i_phi + n_phi // 2) % n_phi

    return SphereGrid(
        directions=_frozen(directions),
        weights=_frozen(weights),
        n_theta=n_theta,
        n_phi=n_phi,
        cos_theta=_frozen(cos_t),
        phi=_frozen(phi_a),
        antipodes=_frozen(antipodes),
    )


def build_theta_rule(n: int) -> ThetaRule:
    """
    Polar rule on [0, π] from Gauss–Legendre in cos θ.

    ∫ g(θ) sin θ dθ = Σ w_k g(θ_k) sin θ_k exactly when g is a polynomial in cos θ
    of degree <= 2n - 1.
    """
    if n < 1:
        raise GridError(f"theta rule needs at least 1 node, got {n}")
    x, w = np.polynomial.legendre.leggauss(n)
    theta = np.arccos(x)
    return ThetaRule(_frozen(theta), _frozen(w / np.sin(theta)))


def build_volume_grid(rg: RadialGrid, sg: SphereGrid) -> VolumeGrid:
    """
    Product of a radial and a sphere grid: r_i = r ω, w_i = w_r r^2 μ_ω.

    Node i = i_r * sg.size + a.
    """
    radii = np.repeat(rg.nodes, sg.size)
    nodes = radii[:, None] * np.tile(sg.directions, (rg.size, 1))
    weights = np.repeat(rg.weights * rg.nodes ** 2, sg.size) * np.tile(sg.weights, rg.size)
    grid = VolumeGrid(
        nodes=_frozen(nodes),
        weights=_frozen(weights),
        radii=_frozen(radii),
        n_r=rg.size,
        n_theta=sg.n_theta,
        n_phi=sg.n_phi,
        r_max=rg.r_max,
    )
    logger.debug(f"Built {grid.describe()}")
    return grid


def dump_grid(grid: Union[VolumeGrid, SphereGrid, RadialGrid], path: Union[str, Path]) -> Path:
    """
    Write a grid as text: one node per line, coordinates followed by the weight.

    Returns:
        Path: The written file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(grid, VolumeGrid):
        table = np.column_stack((grid.nodes, grid.weights))
    elif isinstance(grid, SphereGrid):
        table = np.column_stack((grid.directions, grid.weights))
    else:
        table = np.column_stack((grid.nodes, grid.weights))
    np.savetxt(path, table, fmt="%.17e")
    logger.info(f"Grid with {table.shape[0]} nodes written to {path}")
    return path
