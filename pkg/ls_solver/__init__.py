"""
Lippmann–Schwinger kernel, solve and spectral diagnostics.
"""
from .kernel import KernelMatrix, assemble_kernel, assemble_kernel_imaginary
from .conditioning import SingularValueEstimate, estimate_singular_values, smallest_singular_value
from .solve import WaveTable, incident_rhs, plane_wave_matrix, solve_modified_ls
from .diagnostics import exceptional_scan, hs_norms, sine_kernel_diagonal
from .bound_states import BoundState, bound_state_scan, signed_sigma_ratio
from .farfield import farfield_check, scattered_wave

__all__ = [
    'KernelMatrix', 'assemble_kernel', 'assemble_kernel_imaginary',
    'SingularValueEstimate', 'estimate_singular_values', 'smallest_singular_value',
    'WaveTable', 'incident_rhs', 'plane_wave_matrix', 'solve_modified_ls',
    'exceptional_scan', 'hs_norms', 'sine_kernel_diagonal',
    'BoundState', 'bound_state_scan', 'signed_sigma_ratio',
    'farfield_check', 'scattered_wave',
]
