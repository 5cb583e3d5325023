"""
Grouping of S eigenvalues into angular-momentum clusters for spherically symmetric potentials.

A rotation-invariant S acts on the spherical harmonics of degree ℓ by one eigenvalue with
multiplicity 2ℓ+1. The zonal harmonic √((2ℓ+1)/4π) P_ℓ(ω·ẑ) lies in that eigenspace, so its
Rayleigh quotient locates the cluster; every eigenvalue closer to it than half the gap to the
neighbouring degrees is counted into it.
"""
from typing import List

import numpy as np
import pandas as pd

from specfun import legendre_table
from utils.logger import get_logger
from .spectrum import SMatrixSpectrum

logger = get_logger(__name__)


def zonal_vectors(spec: SMatrixSpectrum, max_degree: int) -> np.ndarray:
    """Zonal harmonics in weighted coordinates, one column per ℓ = 0..max_degree."""
    sphere = spec.sphere
    table = legendre_table(max_degree, sphere.cos_theta)
    norms = np.sqrt((2.0 * np.arange(max_degree + 1) + 1.0) / (4.0 * np.pi))
    return (np.sqrt(sphere.weights)[:, None] * (table * norms[:, None]).T).astype(np.complex128)


def rayleigh_shifts(spec: SMatrixSpectrum, max_degree: int) -> np.ndarray:
    """z_ℓ^H (Ŝ - I) z_ℓ / z_ℓ^H z_ℓ for ℓ = 0..max_degree, evaluated through the eigenpairs."""
    z = zonal_vectors(spec, max_degree)
    left = z.conj().T @ spec.vectors
    right = spec.inverse @ z
    numerator = np.einsum("lj,jk,kl->l", left, spec.block, right)
    return numerator / np.sum(np.abs(z) ** 2, axis=0)


def eigenvalue_clusters(spec: SMatrixSpectrum, tolerance: float) -> List[np.ndarray]:
    """
    Single-linkage groups of eigenvalues closer than tolerance, strongest scattering first.
    """
    nu = spec.eigenvalues
    n = nu.size
    parent = np.arange(n)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    distance = np.abs(nu[:, None] - nu[None, :])
    for i, j in zip(*np.nonzero(np.triu(distance <= tolerance, k=1))):
        parent[find(i)] = find(j)
    roots = np.array([find(i) for i in range(n)])
    groups = [np.flatnonzero(roots == root) for root in np.unique(roots)]
    groups.sort(key=lambda members: -np.max(np.abs(spec.shifts[members])))
    return groups


def assign_partial_waves(spec: SMatrixSpectrum, max_degree: int) -> pd.DataFrame:
    """
    Match ℓ = 0..max_degree to eigenvalue clusters.

    Returns:
        pd.DataFrame: columns l, nu_re, nu_im (cluster mean), rayleigh_re, rayleigh_im,
        radius, multiplicity, expected (2ℓ+1) and overlap (fraction of the zonal vector
        captured by the cluster's eigenvectors)
    """
    spec.check_complete()
    guard_degree = max_degree + 1
    rayleigh = 1.0 + rayleigh_shifts(spec, guard_degree)
    nu = spec.eigenvalues
    z = zonal_vectors(spec, max_degree)

    rows = []
    for ell in range(max_degree + 1):
        others = np.delete(rayleigh, ell)
        radius = 0.5 * float(np.min(np.abs(others - rayleigh[ell])))
        members = np.flatnonzero(np.abs(nu - rayleigh[ell]) <= radius)
        if members.size:
            mean = complex(np.mean(nu[members]))
            basis = spec.vectors[:, members]
            coefficients, *_ = np.linalg.lstsq(basis, z[:, ell], rcond=None)
            overlap = float(np.linalg.norm(basis @ coefficients) / np.linalg.norm(z[:, ell]))
        else:
            mean = complex(rayleigh[ell])
            overlap = 0.0
        rows.append({
            "l": ell,
            "nu_re": mean.real,
            "nu_im": mean.imag,
            "rayleigh_re": float(rayleigh[ell].real),
            "rayleigh_im": float(rayleigh[ell].imag),
            "radius": radius,
            "multiplicity": int(members.size),
            "expected": 2 * ell + 1,
            "overlap": overlap,
        })
        if members.size != 2 * ell + 1:
            logger.debug(f"l={ell}: cluster has {members.size} eigenvalues, expected {2 * ell + 1}")
    return pd.DataFrame(rows)


def cluster_labels(spec: SMatrixSpectrum, assignment: pd.DataFrame) -> List:
    """Per-eigenvalue ℓ label from an assignment table, None where unassigned."""
    nu = spec.eigenvalues
    labels = [None] * spec.size
    for row in assignment.itertuples(index=False):
        centre = complex(row.rayleigh_re, row.rayleigh_im)
        for j in np.flatnonzero(np.abs(nu - centre) <= row.radius):
            if labels[j] is None:
                labels[j] = int(row.l)
    return labels
