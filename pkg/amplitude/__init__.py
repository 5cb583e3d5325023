"""
Scattering amplitude, Born oracle and derived observables.
"""
from .matrix import (
    AmplitudeMatrix,
    born_amplitude,
    born_amplitude_matrix,
    outgoing_projection,
    scattering_amplitude,
)
from .observables import (
    differential_cross_section,
    forward_incident_index,
    minimum_forward_imaginary,
    reciprocity_defect,
    rotational_spread,
)
from .export import amplitude_frame, amplitude_record

__all__ = [
    'AmplitudeMatrix', 'born_amplitude', 'born_amplitude_matrix', 'outgoing_projection', 'scattering_amplitude',
    'differential_cross_section', 'forward_incident_index', 'minimum_forward_imaginary',
    'reciprocity_defect', 'rotational_spread',
    'amplitude_frame', 'amplitude_record',
]
