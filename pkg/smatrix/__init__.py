"""
T and S operators on the sphere, their spectrum and the spectral cross sections.
"""
from .operators import SOperator, TKernel, amplitude_from_transition, assemble_S, assemble_T, mu_squared
from .spectrum import (
    SMatrixSpectrum,
    cluster_tolerance,
    degenerate_clusters,
    eigendecompose,
    ergodic_reconstruct,
    expansion_closed_form,
    expansion_coefficients,
    expansion_coefficients_operator,
    spectrum_frame,
)
from .cross_sections import (
    cross_section_double,
    cross_section_spectral,
    cross_section_spectral_diagonal,
    optical_theorem_defect,
)
from .clusters import assign_partial_waves, cluster_labels, eigenvalue_clusters, rayleigh_shifts, zonal_vectors

__all__ = [
    'SOperator', 'TKernel', 'amplitude_from_transition', 'assemble_S', 'assemble_T', 'mu_squared',
    'SMatrixSpectrum', 'cluster_tolerance', 'degenerate_clusters', 'eigendecompose', 'ergodic_reconstruct',
    'expansion_closed_form', 'expansion_coefficients', 'expansion_coefficients_operator', 'spectrum_frame',
    'cross_section_double', 'cross_section_spectral', 'cross_section_spectral_diagonal', 'optical_theorem_defect',
    'assign_partial_waves', 'cluster_labels', 'eigenvalue_clusters', 'rayleigh_shifts', 'zonal_vectors',
]
