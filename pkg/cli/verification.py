"""
The verification suite run by `main.py verify`.

Each check adds Criterion records to a VerificationReport. Identities that hold exactly
on the discretization are checked at roundoff level; the convergence checks use the
configured tolerances.
"""
import math
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from amplitude import reciprocity_defect, rotational_spread
from ls_solver import bound_state_scan, farfield_check
from potentials import decay_report, rollnik_norm_estimate, square_well, yukawa, zero_potential
from quadrature import build_theta_rule
from radial import (
    PhaseShiftTable,
    count_bound_states_s_wave,
    cross_section_single,
    fold_principal,
    phase_shift,
    verify_eigen_correspondence,
)
from smatrix import (
    ergodic_reconstruct,
    expansion_closed_form,
    expansion_coefficients,
    expansion_coefficients_operator,
    optical_theorem_defect,
)
from specfun import legendre_norm_audit
from utils.errors import ExceptionalValueError, GridError, ScatteringError, SpectrumError
from utils.logger import get_logger
from .commands import EXIT_FAILURE, EXIT_OK, energy_directory, prepare_output, run_summary, write_energy_outputs
from .config import GridConfig, RunConfig
from .outputs import write_json, write_table
from .pipeline import EnergyRun, build_grid_set, radial_table, relative_frobenius, relative_gap, run_energy
from .report import VerificationReport

logger = get_logger(__name__)

# identities that hold to roundoff on any grid
ROUNDOFF_TOLERANCE = 1e-10

TRIVIAL_GRID = GridConfig(n_r=8, n_theta=6, n_phi=12, r_max=None)


def check_energy(report: VerificationReport, run: EnergyRun, config: RunConfig) -> None:
    """Spectral identities and diagnostics of one solved energy."""
    thresholds = config.verify
    grid = run.grids.label
    energy = run.energy
    f = run.amplitude

    report.add("reconstruction", relative_frobenius(ergodic_reconstruct(run.spectrum).values, f.values),
               thresholds.reconstruction, energy=energy, grid=grid)
    report.add("parseval", relative_gap(run.sigma_double, run.sigma_spectral), thresholds.parseval,
               energy=energy, grid=grid, sigma_double=run.sigma_double, sigma_spectral=run.sigma_spectral,
               sigma_spectral_diagonal=run.sigma_spectral_diagonal)
    report.add("unitarity", run.operator.unitarity_defect, thresholds.unitarity, energy=energy, grid=grid,
               normality_defect=run.operator.normality_defect,
               unimodularity_defect=run.spectrum.unimodularity_defect,
               orthonormality_defect=run.spectrum.orthonormality_defect)

    row = int(np.argmax(f.sphere.directions[:, 2]))
    quadrature = expansion_coefficients(f, run.spectrum, row)
    operator = expansion_coefficients_operator(run.transition, run.spectrum, row)
    closed = expansion_closed_form(run.spectrum, row)
    scale = max(float(np.max(np.abs(closed))), np.finfo(float).tiny)
    report.add("expansion_routes", float(np.max(np.abs(operator - quadrature)) / scale), energy=energy, grid=grid,
               closed_form_gap=float(np.max(np.abs(closed - quadrature)) / scale))

    report.add("sigma_min_ratio", run.conditioning.ratio, energy=energy, grid=grid,
               sigma_min=run.conditioning.sigma_min, sigma_max=run.conditioning.sigma_max)
    if run.hs_norms is not None:
        report.add("hs_norm_K", run.hs_norms[0], energy=energy, grid=grid, hs_norm_FF=run.hs_norms[1])
    report.add("optical_theorem", optical_theorem_defect(f, run.grids.sphere), energy=energy, grid=grid)
    report.add("reciprocity", reciprocity_defect(f), energy=energy, grid=grid)
    if config.spec.spherically_symmetric:
        report.add("rotational_spread", rotational_spread(f), energy=energy, grid=grid)


def check_farfield(report: VerificationReport, run: EnergyRun, config: RunConfig, directory: Path) -> None:
    radii = config.verify.farfield_radii
    try:
        table = farfield_check(run.wave, run.amplitude, radii)
    except GridError as e:
        report.add_error("farfield", str(e), energy=run.energy, grid=run.grids.label)
        return
    write_table(table, directory, "farfield", config.output.formats, config.config_hash,
                f"scaled far-field residual at lambda={run.energy!r}")
    residuals = table["scaled_residual"].to_numpy()
    decreasing = bool(np.all(np.diff(residuals) < 0)) or bool(np.all(residuals == 0.0))
    report.add("farfield_decreasing", float(residuals[-1]), energy=run.energy, grid=run.grids.label,
               passed=decreasing, radii=list(table["radius"]), scaled_residuals=list(residuals))


def check_radial(report: VerificationReport, run: EnergyRun, table: PhaseShiftTable, config: RunConfig,
                 directory: Path) -> None:
    """Partial-wave routes and the eigenvalue/phase-shift correspondence at one energy."""
    thresholds = config.verify
    grid = run.grids.label
    energy = run.energy

    angular, partial = cross_section_single(table)
    report.add("partial_wave_routes", relative_gap(angular, partial), thresholds.partial_wave_routes,
               energy=energy, grid=grid, sigma_angular=angular, sigma_partial=partial,
               l_max=table.l_max, tail=table.tail)

    correspondence = verify_eigen_correspondence(run.spectrum, table, max_degree=thresholds.correspondence_l_max,
                                                 sigma_double=run.sigma_double)
    write_table(correspondence.table, directory, "correspondence", config.output.formats, config.config_hash,
                f"cluster eigenvalues against exp(2i delta_l) at lambda={energy!r}")
    # resolved clusters must also carry 2ℓ+1 eigenvalues
    passed = correspondence.max_distance <= thresholds.correspondence and correspondence.multiplicities_ok
    report.add("eigen_correspondence", correspondence.max_distance, thresholds.correspondence, energy=energy,
               grid=grid, passed=passed, multiplicities_ok=correspondence.multiplicities_ok,
               multiplicities=list(correspondence.table["multiplicity"]),
               literal_distance=float(correspondence.table["literal_distance"].max()),
               amplitude_route_gap=correspondence.amplitude_route_gap, notes=correspondence.notes)

    ratio = correspondence.cross_section_ratio
    report.add("cross_section_ratio", None if ratio is None else abs(ratio - 1.0), thresholds.cross_section_ratio,
               energy=energy, grid=grid, ratio=ratio, sigma_double=run.sigma_double, sigma_single=partial)


def check_refinement(report: VerificationReport, reference: EnergyRun, config: RunConfig) -> None:
    """
    The unitarity defect of the reference grid must be smaller than on a grid with every
    node count halved. Only this halved grid is compared; it is not a refinement sweep.
    """
    coarse = config.grid.coarsened()
    grids = build_grid_set(coarse, reference.grids.volume.r_max)
    try:
        run = run_energy(config.spec, grids, reference.energy, config.solver)
    except (ExceptionalValueError, SpectrumError) as e:
        report.add_error("refinement", str(e), energy=reference.energy, grid=grids.label)
        return
    improved = reference.unitarity_defect < run.unitarity_defect or run.unitarity_defect == 0.0
    report.add("refinement", reference.unitarity_defect, energy=reference.energy, grid=reference.grids.label,
               passed=improved, comparison="halved grid", coarse_grid=grids.label,
               coarse_defect=run.unitarity_defect)


def born_closed_form(g: float, mu: float, energy: float, directions: np.ndarray) -> np.ndarray:
    """-g / (|q|² + mu²) with |q|² = 2λ(1 - ω·ω')."""
    cosines = np.clip(directions @ directions.T, -1.0, 1.0)
    return -g / (2.0 * energy * (1.0 - cosines) + mu ** 2)


def check_born(report: VerificationReport, config: RunConfig) -> None:
    born = config.verify.born_check
    p = yukawa(born.g, born.mu)
    grids = build_grid_set(born.grid, born.grid.r_max or p.support_radius)
    try:
        run = run_energy(p, grids, born.energy, config.solver)
    except (ExceptionalValueError, SpectrumError) as e:
        report.add_error("born_limit", str(e), energy=born.energy, grid=grids.label)
        return
    exact = born_closed_form(born.g, born.mu, born.energy, grids.sphere.directions)
    gap = float(np.max(np.abs(run.amplitude.values - exact) / np.abs(exact)))
    report.add("born_limit", gap, born.tolerance, energy=born.energy, grid=grids.label, g=born.g, mu=born.mu)


def square_well_delta0(V0: float, a: float, energy: float) -> float:
    """Closed-form s-wave phase shift of the attractive square well, folded to (-π/2, π/2]."""
    k = math.sqrt(energy)
    inner = math.sqrt(energy + V0)
    return fold_principal(math.atan((k / inner) * math.tan(inner * a)) - k * a)


def check_square_well(report: VerificationReport, config: RunConfig) -> None:
    oracle = config.verify.square_well_oracle
    p = square_well(oracle.V0, oracle.a)
    gaps = []
    for energy in oracle.energies:
        computed = phase_shift(p, 0, energy, step=config.radial.step)
        expected = square_well_delta0(oracle.V0, oracle.a, energy)
        # compare modulo π
        gaps.append(abs(fold_principal(computed - expected)))
    report.add("square_well_delta0", max(gaps), oracle.tolerance, grid="radial", V0=oracle.V0, a=oracle.a,
               energies=list(oracle.energies), gaps=gaps)


def check_bound_state_threshold(report: VerificationReport, config: RunConfig) -> None:
    """3D bound-state counts against the shooting oracle for a sequence of square-well depths."""
    threshold = config.verify.bound_state_threshold
    found, expected = [], []
    label = ""
    for depth in threshold.depths:
        p = square_well(depth, threshold.a)
        grids = build_grid_set(threshold.grid, threshold.grid.r_max or p.support_radius)
        label = grids.label
        states = bound_state_scan(p, grids.volume, threshold.kappa_range, threshold.n_samples,
                                  accept_ratio=config.boundstates.accept_ratio)
        found.append(len(states))
        expected.append(count_bound_states_s_wave(p, step=config.radial.step))
    monotone = all(b >= a for a, b in zip(found, found[1:]))
    report.add("bound_state_threshold", float(max(abs(f - e) for f, e in zip(found, expected))), grid=label,
               passed=found == expected and monotone, depths=list(threshold.depths), found=found, oracle=expected)


def check_trivial(report: VerificationReport, config: RunConfig) -> None:
    """V ≡ 0: f, S - I, ν - 1, σ and every δ_ℓ vanish."""
    p = zero_potential(config.spec.support_radius)
    grids = build_grid_set(TRIVIAL_GRID, p.support_radius)
    energy = config.energies[0]
    run = run_energy(p, grids, energy, config.solver)
    table = radial_table(p, energy, config.radial)
    values = [
        float(np.max(np.abs(run.amplitude.values))),
        float(np.max(np.abs(run.operator.transition))),
        float(np.max(np.abs(run.spectrum.shifts))),
        abs(run.sigma_double),
        abs(run.sigma_spectral),
        float(np.max(np.abs(table.deltas))),
    ]
    report.add("trivial_potential", max(values), ROUNDOFF_TOLERANCE, energy=energy, grid=grids.label,
               max_amplitude=values[0], max_transition=values[1], max_shift=values[2],
               sigma=values[3], max_delta=values[5])


def check_potential(report: VerificationReport, config: RunConfig, grids) -> None:
    """Informational integrability diagnostics of the configured potential."""
    p = config.spec
    if p.is_zero:
        return
    try:
        report.add("rollnik_estimate", rollnik_norm_estimate(p, grids.volume), grid=grids.label)
    except ScatteringError as e:
        report.add_error("rollnik_estimate", str(e), grid=grids.label)
    radii = p.support_radius * np.array([0.5, 1.0, 2.0, 4.0])
    monitored = decay_report(p, radii)["monitored"].to_numpy()
    report.add("decay_monitor", float(monitored.max()), grid=grids.label, radii=list(radii),
               monitored=list(monitored))

    audit = legendre_norm_audit(8, build_theta_rule(16))
    report.add("legendre_norm", float(np.max(np.abs(audit["numerical"] - audit["standard"]))), ROUNDOFF_TOLERANCE,
               grid="theta16", literal_gap=float(np.max(np.abs(audit["numerical"] - audit["literal"]))))


def cmd_verify(config: RunConfig) -> int:
    """
    Run every configured check and write verification_report.json and .csv.

    Returns:
        int: 0 when every criterion passed, 1 otherwise
    """
    grids = build_grid_set(config.grid, config.grid_radius())
    out = prepare_output(config, grids)
    report = VerificationReport(config.config_hash)
    logger.info(f"verify: {config.spec.describe()} on {grids.volume.describe()}")

    check_potential(report, config, grids)

    reference: Optional[EnergyRun] = None
    for index, energy in enumerate(tqdm(config.energies, desc="Energies", unit="lambda", disable=None)):
        try:
            run = run_energy(config.spec, grids, energy, config.solver, with_norms=True)
        except (ExceptionalValueError, SpectrumError) as e:
            report.add_error("pipeline", str(e), energy=energy, grid=grids.label)
            continue
        directory = energy_directory(out, index)
        table = radial_table(config.spec, energy, config.radial)
        write_energy_outputs(run, table, directory, config)
        check_energy(report, run, config)
        check_farfield(report, run, config, directory)
        if table is not None:
            check_radial(report, run, table, config, directory)
        if reference is None:
            reference = run

    thresholds = config.verify
    if thresholds.refinement_check and reference is not None and not config.spec.is_zero:
        check_refinement(report, reference, config)
    sections = [
        (thresholds.born_check is not None, "born_limit", check_born),
        (thresholds.square_well_oracle is not None, "square_well_delta0", check_square_well),
        (thresholds.bound_state_threshold is not None, "bound_state_threshold", check_bound_state_threshold),
        (thresholds.trivial_check, "trivial_potential", check_trivial),
    ]
    for enabled, name, check in sections:
        if not enabled:
            continue
        try:
            check(report, config)
        except (ScatteringError, ValueError) as e:
            report.add_error(name, str(e))

    digest = config.config_hash
    write_json(report.to_record(), out / "verification_report.json", digest)
    write_table(report.frame(), out, "verification_report", ["csv"], digest, "one row per criterion")
    write_json(run_summary(config, "verify", grid=grids.label, passed=report.passed,
                           failed=[c.name for c in report.failures]), out / "summary.json", digest)
    logger.info(report.summary())
    return EXIT_OK if report.passed else EXIT_FAILURE
