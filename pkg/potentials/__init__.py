"""
Potential family, pointwise evaluation and integrability diagnostics.
"""
from .spec import (
    PotentialKind,
    PotentialSpec,
    gaussian,
    gaussian_off_center,
    square_well,
    tabulated_radial,
    yukawa,
    zero_potential,
)
from .evaluation import evaluate, evaluate_radial, sign_and_sqrt
from .diagnostics import decay_report, equal_volume_radius, rollnik_norm_estimate
from .loader import load_tabulated_potential, potential_from_mapping

__all__ = [
    'PotentialKind', 'PotentialSpec',
    'gaussian', 'gaussian_off_center', 'square_well', 'tabulated_radial', 'yukawa', 'zero_potential',
    'evaluate', 'evaluate_radial', 'sign_and_sqrt',
    'decay_report', 'equal_volume_radius', 'rollnik_norm_estimate',
    'load_tabulated_potential', 'potential_from_mapping',
]
