"""
Special functions for the radial solver and partial-wave sums.
"""
from .legendre import legendre_norm_audit, legendre_norm_integral, legendre_p, legendre_table
from .bessel import spherical_bessel, spherical_bessel_table

__all__ = [
    'legendre_norm_audit', 'legendre_norm_integral', 'legendre_p', 'legendre_table',
    'spherical_bessel', 'spherical_bessel_table',
]
