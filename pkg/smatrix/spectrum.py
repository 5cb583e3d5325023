"""
Eigendecomposition of Ŝ and the spectral formulas built on it.

The discretized Ŝ is only near-normal. Eigenvalues that coincide to within the non-normality
form a cluster whose eigenvectors LAPACK returns in an arbitrary, often badly skewed basis, so
each cluster's columns are replaced by an orthonormal basis of the same invariant subspace. On
that basis Ŝ - I acts by a small upper-triangular block per cluster, and the spectrum keeps
that block (coupling) next to the shifts. The columns stay biorthogonal to their duals D_j
(Σ_a μ_a G_i(ω_a) conj(D_j(ω_a)) = δ_ij), and every spectral formula uses the dual in the
conjugated slot, so reconstruction is exact on the grid. For a normal Ŝ the block is diagonal
and the duals coincide with G_j.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from scipy.linalg import LinAlgError, eig, inv, qr, schur
from scipy.sparse.csgraph import connected_components

from amplitude import AmplitudeMatrix
from quadrature import SphereGrid
from utils.errors import SpectrumError
from utils.logger import get_logger
from .operators import SOperator, TKernel

logger = get_logger(__name__)

# eigenvector matrices worse conditioned than this cannot give a usable dual basis
MAX_EIGENVECTOR_CONDITION = 1e12
# relative cluster width, as a multiple of the normality defect, clipped to the bounds
CLUSTER_NORMALITY_FACTOR = 100.0
CLUSTER_RELATIVE_BOUNDS = (1e-8, 0.1)
# shifts below this fraction of the largest one are roundoff and always share a cluster
CLUSTER_FLOOR = 1e-10
# cluster blocks whose QR factor is worse conditioned than this take a sorted Schur basis instead
MAX_CLUSTER_CONDITION = 1e8


@dataclass(frozen=True, eq=False)
class SMatrixSpectrum:
    """
    Eigenpairs of Ŝ.

    Attributes:
        energy: λ
        shifts: α_j = ν_j - 1, computed from Ŝ - I directly
        vectors: Eigenvectors of Ŝ in weighted coordinates, unit columns, orthonormal within a cluster
        inverse: vectors^{-1}
        sphere: Sphere grid
        unitarity_defect: Copied from the S operator
        coupling: inverse (Ŝ - I) vectors, block diagonal over clusters; None means diag(shifts)
        clusters: Cluster index per eigenpair; None means every eigenpair is its own cluster
    """
    energy: float
    shifts: np.ndarray
    vectors: np.ndarray
    inverse: np.ndarray
    sphere: SphereGrid
    unitarity_defect: float = 0.0
    coupling: Optional[np.ndarray] = None
    clusters: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return self.shifts.size

    @property
    def wavenumber(self) -> float:
        return float(np.sqrt(self.energy))

    @property
    def block(self) -> np.ndarray:
        """Ŝ - I in the eigenvector basis; its diagonal is the shifts."""
        return np.diag(self.shifts) if self.coupling is None else self.coupling

    @property
    def eigenvalues(self) -> np.ndarray:
        return 1.0 + self.shifts

    @property
    def unit_eigenvalues(self) -> np.ndarray:
        """Eigenvalues projected radially onto the unit circle (reporting only)."""
        nu = self.eigenvalues
        return nu / np.abs(nu)

    @property
    def eigenfunctions(self) -> np.ndarray:
        """G_j(ω_a) = v_j(a) / √μ_a, one column per eigenpair."""
        return self.vectors / np.sqrt(self.sphere.weights)[:, None]

    @property
    def duals(self) -> np.ndarray:
        """D_j(ω_a) with Σ_a μ_a G_i(ω_a) conj(D_j(ω_a)) = δ_ij."""
        return self.inverse.conj().T / np.sqrt(self.sphere.weights)[:, None]

    @property
    def orthonormality_defect(self) -> float:
        """||Σ_a μ_a conj(G_i) G_j - δ_ij||_2; zero only for a normal Ŝ."""
        gram = self.vectors.conj().T @ self.vectors
        return float(np.linalg.norm(gram - np.eye(self.size), 2))

    @property
    def unimodularity_defect(self) -> float:
        return float(np.max(np.abs(np.abs(self.eigenvalues) - 1.0))) if self.size else 0.0

    @property
    def condition(self) -> float:
        return float(np.linalg.norm(self.vectors, 2) * np.linalg.norm(self.inverse, 2))

    def check_complete(self) -> None:
        if self.vectors.shape != (self.sphere.size, self.sphere.size) or self.size != self.sphere.size:
            raise SpectrumError(f"spectrum has {self.size} eigenpairs for a {self.sphere.size}-node grid")


def cluster_tolerance(normality_defect: float) -> float:
    """Relative width of a degenerate cluster for a given normality defect."""
    low, high = CLUSTER_RELATIVE_BOUNDS
    return float(np.clip(CLUSTER_NORMALITY_FACTOR * normality_defect, low, high))


def degenerate_clusters(shifts: np.ndarray, relative: float) -> np.ndarray:
    """
    Single-linkage cluster index per shift.

    Two shifts are linked when |α_i - α_j| <= relative * max(|α_i|, |α_j|), or when both lie below
    the roundoff floor.
    """
    if shifts.size == 0:
        return np.zeros(0, dtype=int)
    size = np.abs(shifts)
    floor = CLUSTER_FLOOR * float(np.max(size))
    distance = np.abs(shifts[:, None] - shifts[None, :])
    linked = distance <= relative * np.maximum(size[:, None], size[None, :])
    linked |= (size[:, None] <= floor) & (size[None, :] <= floor)
    _, labels = connected_components(linked, directed=False)
    return labels


def _cluster_basis(transition: np.ndarray, vectors: np.ndarray, shifts: np.ndarray, members: np.ndarray,
                   relative: float, floor: float) -> np.ndarray:
    """
    Orthonormal basis of the invariant subspace of one cluster.

    QR of the eigenvector block when it is well conditioned; otherwise the leading vectors of a
    Schur form sorted to bring the cluster's eigenvalues first.
    """
    q, r = qr(vectors[:, members], mode="economic")
    diagonal = np.abs(np.diag(r))
    if diagonal.min() > diagonal.max() / MAX_CLUSTER_CONDITION:
        return q
    selected = shifts[members]

    def inside(x) -> bool:
        gap = np.abs(selected - x)
        near = gap <= relative * np.maximum(np.abs(selected), abs(x))
        noise = (abs(x) <= floor) & (np.abs(selected) <= floor)
        return bool(np.any(near | noise))

    _, z, sdim = schur(transition, output="complex", sort=inside)
    if sdim != members.size:
        logger.warning(f"Sorted Schur form selected {sdim} of {members.size} clustered eigenvalues; keeping QR basis")
        return q
    return z[:, :sdim]


def _orthonormalize_clusters(transition: np.ndarray, vectors: np.ndarray, shifts: np.ndarray,
                             labels: np.ndarray, relative: float) -> int:
    """Replace each multi-member cluster block of vectors in place; returns the number of such clusters."""
    floor = CLUSTER_FLOOR * float(np.max(np.abs(shifts)))
    touched = 0
    for label in np.unique(labels):
        members = np.flatnonzero(labels == label)
        if members.size < 2:
            continue
        vectors[:, members] = _cluster_basis(transition, vectors, shifts, members, relative, floor)
        touched += 1
    return touched


def eigendecompose(s: SOperator) -> SMatrixSpectrum:
    """
    Full eigendecomposition of Ŝ through Ŝ - I, orthonormalized within degenerate clusters.

    Raises:
        SpectrumError: If the eigensolver fails or the eigenvector matrix is numerically singular
    """
    n = s.sphere.size
    try:
        shifts, vectors = eig(s.transition, check_finite=True)
    except (LinAlgError, ValueError) as e:
        raise SpectrumError(f"eigensolver failed at lambda={s.energy:g}: {e}") from e
    if shifts.size != n:
        raise SpectrumError(f"eigensolver returned {shifts.size} eigenvalues for a {n}x{n} matrix")

    vectors = vectors / np.linalg.norm(vectors, axis=0)[None, :]

    relative = cluster_tolerance(s.normality_defect)
    labels = degenerate_clusters(shifts, relative)
    touched = _orthonormalize_clusters(s.transition, vectors, shifts, labels, relative)

    condition = float(np.linalg.cond(vectors))
    if not np.isfinite(condition) or condition > MAX_EIGENVECTOR_CONDITION:
        raise SpectrumError(f"eigenvector matrix is numerically singular at lambda={s.energy:g}", condition)
    try:
        inverse = inv(vectors)
    except LinAlgError as e:
        raise SpectrumError(f"eigenvector matrix could not be inverted at lambda={s.energy:g}", condition) from e

    # cross-cluster entries vanish up to roundoff
    coupling = inverse @ s.transition @ vectors
    coupling[labels[:, None] != labels[None, :]] = 0.0
    # a cluster's eigenvalues sit on its block diagonal, in the order of its new basis
    clustered = np.bincount(labels)[labels] > 1
    diagonal = np.diag(coupling).copy()
    shifts = np.where(clustered, diagonal, shifts)
    np.fill_diagonal(coupling, shifts)

    # strongest scattering first
    order = np.argsort(-np.abs(shifts), kind="stable")
    shifts = shifts[order]
    vectors = vectors[:, order]
    inverse = inverse[order, :]
    coupling = coupling[np.ix_(order, order)]
    labels = labels[order]

    spectrum = SMatrixSpectrum(
        energy=s.energy,
        shifts=shifts,
        vectors=vectors,
        inverse=inverse,
        sphere=s.sphere,
        unitarity_defect=s.unitarity_defect,
        coupling=coupling,
        clusters=labels,
    )
    logger.info(
        f"Spectrum at lambda={s.energy:g}: {n} eigenpairs, max ||nu|-1| = {spectrum.unimodularity_defect:.3e}, "
        f"eigenvector condition {condition:.3e}"
    )
    logger.debug(
        f"{touched} degenerate clusters orthonormalized, orthonormality defect "
        f"{spectrum.orthonormality_defect:.3e} against normality defect {s.normality_defect:.3e}"
    )
    return spectrum


def ergodic_reconstruct(spec: SMatrixSpectrum) -> AmplitudeMatrix:
    """
    f̂(ω_a, ω'_b) = (2π / i√λ) Σ_ij G_i(ω_a) B_ij conj(D_j(ω'_b)), B = spec.block.

    For a diagonal B this is Σ_j (ν_j - 1) G_j(ω_a) conj(D_j(ω'_b)).

    Raises:
        SpectrumError: If the spectrum is incomplete
    """
    spec.check_complete()
    values = (2.0 * np.pi / (1j * spec.wavenumber)) * spec.eigenfunctions @ spec.block @ spec.duals.conj().T
    return AmplitudeMatrix(spec.energy, values, spec.sphere)


def expansion_coefficients(f: AmplitudeMatrix, spec: SMatrixSpectrum, row: int) -> np.ndarray:
    """a_j(ω_a, λ) = Σ_b μ_b f(ω_a, ω'_b) G_j(ω'_b) by sphere quadrature."""
    return (f.values[row] * spec.sphere.weights) @ spec.eigenfunctions


def expansion_coefficients_operator(t: TKernel, spec: SMatrixSpectrum, row: int) -> np.ndarray:
    """a_j(ω_a, λ) = -(1 / 4πμ²) (T(λ) G_j)(ω_a), with T applied through its kernel t."""
    applied = (t.values[row] * spec.sphere.weights) @ spec.eigenfunctions
    return -(4.0 * np.pi ** 2 / t.wavenumber) * applied


def expansion_closed_form(spec: SMatrixSpectrum, row: int) -> np.ndarray:
    """a_j(ω_a, λ) = (2π / i√λ) Σ_i G_i(ω_a) B_ij, i.e. (2π / i√λ)(ν_j - 1) G_j(ω_a) off clusters."""
    return (2.0 * np.pi / (1j * spec.wavenumber)) * (spec.eigenfunctions[row] @ spec.block)


def spectrum_frame(spec: SMatrixSpectrum, labels=None) -> pd.DataFrame:
    """
    One row per eigenpair: j, re, im, abs, shift_abs and an optional cluster ℓ label.
    """
    nu = spec.eigenvalues
    frame = pd.DataFrame({
        "j": np.arange(spec.size),
        "re": nu.real,
        "im": nu.imag,
        "abs": np.abs(nu),
        "shift_abs": np.abs(spec.shifts),
    })
    frame["l"] = pd.array([None] * spec.size, dtype="Int64") if labels is None else pd.array(labels, dtype="Int64")
    return frame
