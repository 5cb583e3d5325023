"""
Partial-wave solver for spherically symmetric potentials.
"""
from .numerov import RadialRun, choose_step, integrate, match_radius, natural_length
from .phase_shifts import (
    PhaseShiftTable,
    born_phase_shift,
    count_bound_states_s_wave,
    fold_principal,
    phase_shift,
    phase_shift_table,
    track_branch,
)
from .partial_waves import (
    cross_section_from_samples,
    cross_section_single,
    partial_wave_amplitude,
    partial_wave_amplitude_from_eigenvalues,
    partial_wave_sum,
    theta_rule_for,
)
from .correspondence import CorrespondenceReport, verify_eigen_correspondence

__all__ = [
    'RadialRun', 'choose_step', 'integrate', 'match_radius', 'natural_length',
    'PhaseShiftTable', 'born_phase_shift', 'count_bound_states_s_wave', 'fold_principal',
    'phase_shift', 'phase_shift_table', 'track_branch',
    'cross_section_from_samples', 'cross_section_single', 'partial_wave_amplitude',
    'partial_wave_amplitude_from_eigenvalues', 'partial_wave_sum', 'theta_rule_for',
    'CorrespondenceReport', 'verify_eigen_correspondence',
]
