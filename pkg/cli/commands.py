"""
The four batch commands. Each returns the process exit status:
0 when every requested computation or check succeeded, 1 when a numeric criterion failed
(or an energy was refused as exceptional). Configuration errors propagate to main as exceptions.
"""
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from amplitude import amplitude_frame, amplitude_record, differential_cross_section, forward_incident_index
from ls_solver import bound_state_scan
from radial import (
    PhaseShiftTable,
    born_phase_shift,
    count_bound_states_s_wave,
    cross_section_single,
    partial_wave_amplitude,
    track_branch,
)
from smatrix import assign_partial_waves, cluster_labels, spectrum_frame
from utils.errors import ExceptionalValueError, PotentialError, SpectrumError
from utils.logger import get_logger
from .config import RunConfig
from .outputs import write_csv, write_json, write_table
from .pipeline import EnergyRun, GridSet, build_grid_set, radial_table, relative_gap, run_energy

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

# θ samples for the plot-ready partial-wave differential cross section
PLOT_ANGLES = 181


def energy_directory(root: Path, index: int) -> Path:
    return Path(root) / f"lambda_{index:03d}"


def prepare_output(config: RunConfig, grids: Optional[GridSet] = None) -> Path:
    """Create the output directory and dump the grids when requested."""
    out = Path(config.output.directory)
    out.mkdir(parents=True, exist_ok=True)
    if config.output.dump_grids and grids is not None:
        grids.dump(out / "grids")
    return out


def run_summary(config: RunConfig, command: str, **extra) -> Dict[str, Any]:
    summary = {
        "command": command,
        "potential": config.potential.section,
        "potential_description": config.spec.describe(),
        "energies": list(config.energies),
        "config": config.to_mapping(),
    }
    summary.update(extra)
    return summary


def spectrum_labels(run: EnergyRun, config: RunConfig):
    """ℓ labels for the eigenvalues of a spherically symmetric run, None otherwise."""
    if not config.spec.spherically_symmetric or config.spec.is_zero:
        return None
    try:
        assignment = assign_partial_waves(run.spectrum, config.verify.correspondence_l_max)
    except (SpectrumError, ValueError, np.linalg.LinAlgError) as e:
        logger.warning(f"lambda={run.energy:g}: eigenvalue clusters not labelled ({e})")
        return None
    return cluster_labels(run.spectrum, assignment)


def write_energy_outputs(run: EnergyRun, table: Optional[PhaseShiftTable], directory: Path,
                         config: RunConfig) -> None:
    """Amplitude, spectrum, differential cross section and (radial) phase shifts for one λ."""
    digest = config.config_hash
    formats = config.output.formats
    f = run.amplitude
    if "csv" in formats:
        write_csv(amplitude_frame(f), directory / "amplitude.csv", digest,
                  f"scattering amplitude f(omega_a, omega'_b) at lambda={run.energy!r}")
    if "json" in formats:
        write_json(amplitude_record(f), directory / "amplitude.json", digest)

    write_table(spectrum_frame(run.spectrum, spectrum_labels(run, config)), directory, "spectrum", formats,
                digest, f"eigenvalues of S at lambda={run.energy!r}")
    incident = forward_incident_index(f)
    write_table(differential_cross_section(f, incident), directory, "differential", formats, digest,
                f"|f|^2 for incident node {incident} at lambda={run.energy!r}")
    if table is not None:
        write_table(table.frame(), directory, "phaseshifts", formats, digest,
                    f"phase shifts at lambda={run.energy!r}")


def energy_record(run: EnergyRun, table: Optional[PhaseShiftTable]) -> Dict[str, Any]:
    record = {
        "lambda": run.energy,
        "status": "ok",
        "grid": run.grids.label,
        "n_unknowns": run.grids.volume.size,
        "sigma_min": run.conditioning.sigma_min,
        "sigma_max": run.conditioning.sigma_max,
        "max_residual": float(run.wave.residuals.max()) if run.wave.residuals.size else 0.0,
        "sigma_double": run.sigma_double,
        "sigma_spectral": run.sigma_spectral,
        "sigma_spectral_diagonal": run.sigma_spectral_diagonal,
        "unitarity_defect": run.operator.unitarity_defect,
        "normality_defect": run.operator.normality_defect,
        "unimodularity_defect": run.spectrum.unimodularity_defect,
    }
    if table is not None:
        record["l_max"] = table.l_max
        record["phase_shift_tail"] = table.tail
    return record


def failed_record(energy: float, grids: GridSet, error: Exception) -> Dict[str, Any]:
    record = {"lambda": energy, "grid": grids.label, "message": str(error)}
    if isinstance(error, ExceptionalValueError):
        record.update(status="exceptional", sigma_min=error.sigma_min, sigma_max=error.sigma_max)
    else:
        record["status"] = "spectrum_error"
    return record


def cmd_scatter(config: RunConfig) -> int:
    """
    Full 3D pipeline over the configured energies.

    Writes per-λ amplitude, spectrum, differential (and phase-shift) tables, the run-level
    cross_sections table and summary.json.
    """
    grids = build_grid_set(config.grid, config.grid_radius())
    out = prepare_output(config, grids)
    logger.info(f"scatter: {config.spec.describe()} on {grids.volume.describe()}, {len(config.energies)} energies")

    rows, records = [], []
    failed = False
    for index, energy in enumerate(tqdm(config.energies, desc="Energies", unit="lambda", disable=None)):
        row = {"lambda": energy, "sigma_double": np.nan, "sigma_spectral": np.nan,
               "sigma_spectral_diagonal": np.nan, "sigma_single_angular": np.nan,
               "sigma_single_partial": np.nan, "status": "ok"}
        try:
            run = run_energy(config.spec, grids, energy, config.solver)
        except (ExceptionalValueError, SpectrumError) as e:
            failed = True
            logger.error(f"lambda={energy:g} skipped: {e}")
            record = failed_record(energy, grids, e)
            records.append(record)
            row["status"] = record["status"]
            rows.append(row)
            continue

        table = radial_table(config.spec, energy, config.radial)
        write_energy_outputs(run, table, energy_directory(out, index), config)
        row.update(sigma_double=run.sigma_double, sigma_spectral=run.sigma_spectral,
                   sigma_spectral_diagonal=run.sigma_spectral_diagonal)
        if table is not None:
            row["sigma_single_angular"], row["sigma_single_partial"] = cross_section_single(table)
        rows.append(row)
        records.append(energy_record(run, table))

    digest = config.config_hash
    write_table(pd.DataFrame(rows), out, "cross_sections", config.output.formats, digest,
                "total cross section per energy (double-integral and spectral routes)")
    write_json(run_summary(config, "scatter", grid=grids.label, results=records), out / "summary.json", digest)
    logger.info(f"scatter finished: {sum(r['status'] == 'ok' for r in records)}/{len(records)} energies solved")
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_phaseshifts(config: RunConfig) -> int:
    """
    Radial phase shifts and both single-integral cross sections per energy.

    Raises:
        PotentialError: If the configured potential is not spherically symmetric
    """
    if not config.spec.spherically_symmetric:
        raise PotentialError(f"phaseshifts needs a spherically symmetric potential, got {config.spec.describe()}")
    out = prepare_output(config)
    digest = config.config_hash
    formats = config.output.formats
    angles = np.linspace(0.0, np.pi, PLOT_ANGLES)

    rows, tables = [], []
    for index, energy in enumerate(tqdm(config.energies, desc="Energies", unit="lambda", disable=None)):
        table = radial_table(config.spec, energy, config.radial)
        tables.append(table)
        frame = table.frame()
        frame["born_delta"] = [born_phase_shift(config.spec, ell, energy) for ell in range(table.l_max + 1)]
        directory = energy_directory(out, index)
        write_table(frame, directory, "phaseshifts", formats, digest, f"phase shifts at lambda={energy!r}")
        write_table(
            pd.DataFrame({"theta": angles, "dcs": np.abs(partial_wave_amplitude(table, angles)) ** 2}),
            directory, "partial_wave_dcs", formats, digest, f"|f(theta)|^2 at lambda={energy!r}",
        )
        angular, partial = cross_section_single(table)
        rows.append({
            "lambda": energy,
            "sigma_single_angular": angular,
            "sigma_single_partial": partial,
            "relative_gap": relative_gap(angular, partial),
            "l_max": table.l_max,
            "tail": table.tail,
            "converged": table.converged(config.radial.tail_tolerance),
        })

    write_table(pd.DataFrame(rows), out, "cross_sections", formats, digest,
                "single-integral cross section per energy (angular quadrature and partial-wave sum)")

    # δ_ℓ(λ) on a continuous branch, for ℓ shared by every energy
    shared = min(table.l_max for table in tables)
    deltas = np.array([table.deltas[:shared + 1] for table in tables])
    tracked = track_branch(deltas)
    energies = np.repeat(np.asarray(config.energies, dtype=float), shared + 1)
    scan = pd.DataFrame({
        "lambda": energies,
        "l": np.tile(np.arange(shared + 1), len(tables)),
        "delta": deltas.ravel(),
        "delta_tracked": tracked.ravel(),
    })
    write_table(scan, out, "phase_shift_scan", formats, digest, "phase shifts over the energy list")
    write_json(run_summary(config, "phaseshifts", results=rows), out / "summary.json", digest)
    return EXIT_OK


def cmd_boundstates(config: RunConfig) -> int:
    """
    Scan κ for bound states λ = -κ² and write bound_states.csv; for radial potentials the
    count is cross-checked against the s-wave shooting oracle.
    """
    bs = config.boundstates
    grids = build_grid_set(bs.grid, config.grid_radius(bs.grid))
    out = prepare_output(config, grids)
    digest = config.config_hash

    states = bound_state_scan(config.spec, grids.volume, bs.kappa_range, bs.n_samples, accept_ratio=bs.accept_ratio)
    frame = pd.DataFrame({
        "index": np.arange(len(states)),
        "kappa": [s.kappa for s in states],
        "lambda": [s.energy for s in states],
        "sigma_ratio": [s.sigma_ratio for s in states],
        "detected_by": [s.detected_by for s in states],
    })
    write_table(frame, out, "bound_states", config.output.formats, digest,
                f"bound states with kappa in [{bs.kappa_range[0]!r}, {bs.kappa_range[1]!r}]")

    oracle = None
    if config.spec.spherically_symmetric:
        oracle = count_bound_states_s_wave(config.spec, step=config.radial.step)
        if len(states) < oracle:
            logger.warning(f"3D scan found {len(states)} states, fewer than the {oracle} s-wave states of the radial oracle")
    write_json(run_summary(config, "boundstates", grid=grids.label, n_found=len(states),
                           s_wave_oracle=oracle, states=frame.to_dict(orient="records")),
               out / "summary.json", digest)
    logger.info(f"boundstates: {len(states)} state(s) found" + ("" if oracle is None else f", s-wave oracle {oracle}"))
    return EXIT_OK
