"""
Quadrature grids used by every integral in the scattering pipeline.
"""
from .grids import (
    RadialGrid,
    SphereGrid,
    ThetaRule,
    VolumeGrid,
    build_radial_grid,
    build_sphere_grid,
    build_theta_rule,
    build_volume_grid,
    dump_grid,
)

__all__ = [
    'RadialGrid', 'SphereGrid', 'ThetaRule', 'VolumeGrid',
    'build_radial_grid', 'build_sphere_grid', 'build_theta_rule', 'build_volume_grid',
    'dump_grid',
]
