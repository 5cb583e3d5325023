"""
Numerov integration of the radial equation u'' = F(r) u, F = V + ℓ(ℓ+1)/r² - λ.

The recurrence runs on ratios of w = (1 - t) u, t = h² F / 12, so large ℓ and long
ranges never overflow:

    w_{n+1} / w_n = 12 / (1 - t_n) - 10 - w_{n-1} / w_n

The grid is r_n = n h from the origin. A jump of V is placed on a node, where the mean of
the one-sided values is used together with the h³ jump term (h³/12) ΔF u'(r_n).
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from potentials import PotentialKind, PotentialSpec, evaluate_radial
from utils.constants import MATCH_WAVELENGTHS, STEPS_PER_RANGE, STEPS_PER_WAVELENGTH
from utils.errors import PotentialError


@njit(cache=True)
def _march(t, start, q_start, jump_index, jump_delta, h2, count_until, span):
    """
    Advance the ratio recurrence from node `start` to the last node.

    Returns:
        (w_N / w_{N-1}, w_N / w_{N-span}, sign changes of w in (start, count_until])
    """
    q = q_start
    rho = 1.0
    gain = 1.0
    nodes = 0
    last = t.size - 1
    for n in range(start, last):
        rho = 12.0 / (1.0 - t[n]) - 10.0 - q
        if n == jump_index:
            # (h²/12) ΔF (u_n - u_{n-1}) / w_n
            rho += h2 / 12.0 * jump_delta * (1.0 / (1.0 - t[n]) - q / (1.0 - t[n - 1]))
        if rho == 0.0:
            rho = 1e-300
        if rho < 0.0 and n + 1 <= count_until:
            nodes += 1
        if n >= last - span:
            gain *= rho
        q = 1.0 / rho
    return rho, gain, nodes


@dataclass(frozen=True)
class RadialRun:
    """
    Result of one outward integration.

    `ratio` is u_N / u_{N-1}; `gain` is u_N / u_{N-span}.
    """
    step: float
    radius: float
    ratio: float
    nodes: int
    span: int = 1
    gain: float = float("nan")

    @property
    def previous_radius(self) -> float:
        return self.radius - self.step

    @property
    def span_radius(self) -> float:
        return self.radius - self.span * self.step


def natural_length(p: PotentialSpec) -> float:
    """Length scale that sets the Numerov step for a radial potential."""
    if p.kind is PotentialKind.GAUSSIAN:
        return float(p.params["a"])
    if p.kind is PotentialKind.YUKAWA:
        return 1.0 / float(p.params["mu"])
    if p.kind is PotentialKind.SQUARE_WELL:
        return float(p.params["a"])
    if p.kind is PotentialKind.TABULATED_RADIAL:
        return p.support_radius / 10.0
    raise PotentialError(f"{p.kind.value} is not a radial potential")


def choose_step(p: PotentialSpec, energy: float) -> float:
    """h = min(a / 200, wavelength / 50), shrunk so that a discontinuity falls on a node."""
    if not p.spherically_symmetric:
        raise PotentialError(f"{p.kind.value} is not spherically symmetric")
    h = natural_length(p) / STEPS_PER_RANGE
    if energy > 0:
        h = min(h, 2.0 * math.pi / (math.sqrt(energy) * STEPS_PER_WAVELENGTH))
    edge = p.discontinuity_radius
    if edge is not None:
        h = edge / math.ceil(edge / h)
    return h


def match_radius(p: PotentialSpec, energy: float) -> float:
    """Support radius plus MATCH_WAVELENGTHS wavelengths."""
    return p.support_radius + MATCH_WAVELENGTHS * 2.0 * math.pi / math.sqrt(energy)


def start_index(ell: int) -> int:
    """First integrated node; keeps the centrifugal part of t below 1/2."""
    return max(1, math.ceil(math.sqrt(ell * (ell + 1) / 6.0)))


def _start(ell: int, h: float, t: np.ndarray, origin: float):
    """q = w_{n0-1} / w_{n0} from the regular series at the origin."""
    n0 = start_index(ell)
    b = origin / (2.0 * (ell + 1))

    def u(r):
        return r ** (ell + 1) * (1.0 + b * r)

    w_n0 = (1.0 - t[n0]) * u(n0 * h)
    if n0 == 1:
        # lim_{r->0} F u for u = r^{ℓ+1}(1 + b r)
        limit = origin if ell == 0 else (2.0 if ell == 1 else 0.0)
        w_prev = -(h * h / 12.0) * limit
    else:
        w_prev = (1.0 - t[n0 - 1]) * u((n0 - 1) * h)
    return n0, w_prev / w_n0


def integrate(p: PotentialSpec, ell: int, energy: float, radius: float,
              step: Optional[float] = None, count_until: Optional[float] = None,
              span: int = 1) -> RadialRun:
    """
    Integrate the regular solution from the origin to the first node at or beyond `radius`.

    Args:
        p: Spherically symmetric potential
        ell: Angular momentum
        energy: λ (any sign; zero for node counting)
        radius: Outer radius
        step: Step h; chosen by choose_step when omitted
        count_until: Count sign changes of u only up to this radius (default: all)
        span: Number of steps back from the last node for the gain u_N / u_{N-span}

    Returns:
        RadialRun with the ratio u_N / u_{N-1} and the gain over `span` steps
    """
    h = choose_step(p, energy) if step is None else float(step)
    n_last = max(int(math.ceil(radius / h - 1e-9)), start_index(ell) + 2)
    r = h * np.arange(n_last + 1)

    potential = np.zeros_like(r)
    potential[1:] = evaluate_radial(p, r[1:])
    jump_index, jump_delta = -1, 0.0
    edge = p.discontinuity_radius
    if edge is not None:
        index = int(round(edge / h))
        if 1 <= index < n_last and abs(index * h - edge) <= 1e-9 * edge:
            inside = float(evaluate_radial(p, edge))
            outside = 0.0
            potential[index] = 0.5 * (inside + outside)
            jump_index, jump_delta = index, outside - inside

    factor = np.zeros_like(r)
    factor[1:] = potential[1:] + ell * (ell + 1) / r[1:] ** 2 - energy
    t = h * h * factor / 12.0

    n0, q = _start(ell, h, t, p.origin_coefficient)
    span = int(min(max(1, span), n_last - n0))
    limit = n_last if count_until is None else int(math.floor(count_until / h + 1e-9))
    rho, gain, nodes = _march(t, n0, q, jump_index, jump_delta, h * h, limit, span)
    ratio = rho * (1.0 - t[n_last - 1]) / (1.0 - t[n_last])
    gain = gain * (1.0 - t[n_last - span]) / (1.0 - t[n_last])
    return RadialRun(step=h, radius=float(r[n_last]), ratio=float(ratio), nodes=int(nodes),
                     span=span, gain=float(gain))
