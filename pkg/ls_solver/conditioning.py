"""
Smallest and largest singular values of I + K.

Dense SVD below DENSE_SVD_LIMIT unknowns; above it ARPACK runs on the LU-factored
inverse (largest singular value of (I + K)^{-1} is 1 / σ_min) and on I + K itself.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import LinAlgError, lu_factor, lu_solve, svdvals
from scipy.sparse.linalg import LinearOperator, svds

from utils.constants import DENSE_SVD_LIMIT, EXCEPTIONAL_RATIO
from utils.errors import ExceptionalValueError
from utils.logger import get_logger
from .kernel import KernelMatrix

logger = get_logger(__name__)


@dataclass(frozen=True)
class SingularValueEstimate:
    """σ_min and σ_max of I + K(λ) and the exceptional flag derived from them."""
    energy: float
    sigma_min: float
    sigma_max: float
    threshold_ratio: float = EXCEPTIONAL_RATIO

    @property
    def ratio(self) -> float:
        return self.sigma_min / self.sigma_max if self.sigma_max > 0 else 0.0

    @property
    def exceptional(self) -> bool:
        return self.sigma_min < self.threshold_ratio * self.sigma_max

    def raise_if_exceptional(self) -> None:
        if self.exceptional:
            raise ExceptionalValueError(self.sigma_min, self.sigma_max, self.energy)


def identity_plus(entries: np.ndarray) -> np.ndarray:
    """Return a fresh copy of I + entries."""
    a = entries.copy()
    a[np.diag_indices_from(a)] += 1.0
    return a


def _start_vector(n: int, dtype) -> np.ndarray:
    # fixed start vector keeps ARPACK runs reproducible
    return np.full(n, 1.0 / np.sqrt(n), dtype=dtype)


def _largest_singular(op: LinearOperator) -> float:
    n = op.shape[0]
    values = svds(op, k=1, which="LM", v0=_start_vector(n, op.dtype), return_singular_vectors=False)
    return float(values[0])


def _iterative_extremes(entries: np.ndarray, lu) -> Tuple[float, float]:
    n = entries.shape[0]
    dtype = entries.dtype
    forward = LinearOperator(
        (n, n),
        matvec=lambda x: x + entries @ x,
        rmatvec=lambda x: x + entries.conj().T @ x,
        dtype=dtype,
    )
    inverse = LinearOperator(
        (n, n),
        matvec=lambda x: lu_solve(lu, x),
        rmatvec=lambda x: lu_solve(lu, x, trans=2 if np.iscomplexobj(entries) else 1),
        dtype=dtype,
    )
    sigma_max = _largest_singular(forward)
    sigma_min = 1.0 / _largest_singular(inverse)
    return sigma_min, sigma_max


def estimate_singular_values(kernel: KernelMatrix, lu=None, threshold_ratio: float = EXCEPTIONAL_RATIO,
                          dense_limit: int = DENSE_SVD_LIMIT) -> SingularValueEstimate:
    """
    σ_min and σ_max of I + K.

    Args:
        kernel: The assembled kernel
        lu: Optional (lu, piv) from scipy.linalg.lu_factor of I + K, reused on the ARPACK path
        threshold_ratio: Relative threshold for the exceptional flag
        dense_limit: Largest size handled by a dense SVD; ARPACK above it

    Returns:
        SingularValueEstimate
    """
    if kernel.is_zero:
        return SingularValueEstimate(kernel.energy, 1.0, 1.0, threshold_ratio)

    entries = kernel.entries
    if kernel.size <= dense_limit:
        values = svdvals(identity_plus(entries), check_finite=False)
        estimate = SingularValueEstimate(kernel.energy, float(values[-1]), float(values[0]), threshold_ratio)
    else:
        if lu is None:
            lu = lu_factor(identity_plus(entries), overwrite_a=True, check_finite=False)
        try:
            sigma_min, sigma_max = _iterative_extremes(entries, lu)
        except (LinAlgError, ZeroDivisionError) as e:
            logger.warning(f"Iterative singular values failed at lambda={kernel.energy:g}: {e}")
            sigma_min, sigma_max = 0.0, 1.0
        estimate = SingularValueEstimate(kernel.energy, sigma_min, sigma_max, threshold_ratio)

    logger.debug(
        f"lambda={kernel.energy:g}: sigma_min={estimate.sigma_min:.6e}, sigma_max={estimate.sigma_max:.6e}"
    )
    return estimate


def smallest_singular_value(kernel: KernelMatrix, threshold_ratio: float = EXCEPTIONAL_RATIO,
                            lu: Optional[tuple] = None) -> float:
    """
    σ_min(I + K), logging a warning when the exceptional flag is raised.

    Returns:
        float: σ_min >= 0
    """
    estimate = estimate_singular_values(kernel, lu=lu, threshold_ratio=threshold_ratio)
    if estimate.exceptional:
        logger.warning(
            f"lambda={kernel.energy:g} is numerically exceptional: sigma_min/sigma_max={estimate.ratio:.3e}"
        )
    return estimate.sigma_min
