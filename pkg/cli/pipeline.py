"""
Per-energy scattering pipeline shared by the commands.

potentials -> grids -> kernel -> LS solve -> amplitude -> T, S -> spectrum -> cross sections
"""
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from amplitude import AmplitudeMatrix, scattering_amplitude
from ls_solver import SingularValueEstimate, WaveTable, assemble_kernel, hs_norms, solve_modified_ls
from potentials import PotentialSpec
from quadrature import SphereGrid, VolumeGrid, build_radial_grid, build_sphere_grid, build_volume_grid, dump_grid
from radial import PhaseShiftTable, phase_shift_table
from smatrix import (
    SMatrixSpectrum,
    SOperator,
    TKernel,
    assemble_S,
    assemble_T,
    cross_section_double,
    cross_section_spectral,
    cross_section_spectral_diagonal,
    eigendecompose,
)
from utils.logger import get_logger, run_context
from .config import GridConfig, RadialConfig, SolverConfig

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class GridSet:
    """Volume grid and the sphere grid that doubles as the direction set."""
    volume: VolumeGrid
    sphere: SphereGrid

    @property
    def label(self) -> str:
        v = self.volume
        return f"{v.n_r}x{v.n_theta}x{v.n_phi}@{v.r_max:g}"

    def dump(self, directory: Path) -> list:
        directory = Path(directory)
        return [
            dump_grid(self.volume, directory / f"volume_{self.label}.txt"),
            dump_grid(self.sphere, directory / f"sphere_{self.sphere.n_theta}x{self.sphere.n_phi}.txt"),
        ]


def build_grid_set(grid: GridConfig, radius: float) -> GridSet:
    sphere = build_sphere_grid(grid.n_theta, grid.n_phi)
    volume = build_volume_grid(build_radial_grid(radius, grid.n_r), sphere)
    return GridSet(volume, sphere)


@dataclass(eq=False)
class EnergyRun:
    """Everything computed at one λ on one grid."""
    energy: float
    grids: GridSet
    conditioning: SingularValueEstimate
    wave: WaveTable
    amplitude: AmplitudeMatrix
    transition: TKernel
    operator: SOperator
    spectrum: SMatrixSpectrum
    sigma_double: float
    sigma_spectral: float
    sigma_spectral_diagonal: float
    hs_norms: Optional[Tuple[float, float]] = None
    seconds: float = 0.0

    @property
    def unitarity_defect(self) -> float:
        return self.operator.unitarity_defect


def run_energy(p: PotentialSpec, grids: GridSet, energy: float, solver: SolverConfig,
               with_norms: bool = False) -> EnergyRun:
    """
    Run the full 3D pipeline at one energy.

    Raises:
        ExceptionalValueError: If I + K(λ) is numerically singular
        SpectrumError: If the S eigendecomposition fails
    """
    started = time.perf_counter()
    with run_context(energy, grids.label):
        logger.info(f"Assembling K on {grids.volume.describe()}")
        kernel = assemble_kernel(p, grids.volume, energy)
        norms = hs_norms(kernel, p, grids.volume, energy) if with_norms else None
        wave = solve_modified_ls(kernel, grids.sphere, threshold_ratio=solver.exceptional_ratio,
                                 dense_limit=solver.dense_svd_limit)
        del kernel

        f = scattering_amplitude(wave, p, grids.volume, grids.sphere)
        t = assemble_T(f)
        s = assemble_S(t, grids.sphere)
        spectrum = eigendecompose(s)

        run = EnergyRun(
            energy=float(energy),
            grids=grids,
            conditioning=wave.conditioning,
            wave=wave,
            amplitude=f,
            transition=t,
            operator=s,
            spectrum=spectrum,
            sigma_double=cross_section_double(f),
            sigma_spectral=cross_section_spectral(spectrum),
            sigma_spectral_diagonal=cross_section_spectral_diagonal(spectrum),
            hs_norms=norms,
        )
        run.seconds = time.perf_counter() - started
        logger.info(
            f"sigma_double={run.sigma_double:.10e}, sigma_spectral={run.sigma_spectral:.10e}, "
            f"unitarity defect {run.unitarity_defect:.3e} ({run.seconds:.1f}s)"
        )
    return run


def radial_table(p: PotentialSpec, energy: float, radial: RadialConfig) -> Optional[PhaseShiftTable]:
    """Phase shifts for a spherically symmetric potential, None otherwise."""
    if not p.spherically_symmetric:
        return None
    return phase_shift_table(p, energy, l_max=radial.l_max, tail_tolerance=radial.tail_tolerance,
                             ceiling=radial.l_max_ceiling, step=radial.step)


def relative_gap(a: float, b: float) -> float:
    """|a - b| / max(|a|, |b|), 0 when both vanish."""
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else float(abs(a - b) / scale)


def relative_frobenius(approx: np.ndarray, exact: np.ndarray) -> float:
    """||approx - exact||_F / ||exact||_F, or the absolute norm when exact vanishes."""
    scale = float(np.linalg.norm(exact))
    gap = float(np.linalg.norm(approx - exact))
    return gap if scale == 0.0 else gap / scale
