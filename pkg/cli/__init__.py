"""
Batch front end: run configuration, pipeline orchestration, reports and output files.
"""
from .config import (
    BoundStateConfig,
    BornCheckConfig,
    BoundStateThresholdConfig,
    GridConfig,
    OutputConfig,
    PotentialConfig,
    RadialConfig,
    RunConfig,
    SolverConfig,
    SquareWellOracleConfig,
    VerificationThresholds,
    config_hash,
    load_run_config,
    run_config_from_mapping,
)
from .outputs import header_line, jsonable, read_csv, write_csv, write_json, write_table
from .report import Criterion, VerificationReport
from .pipeline import EnergyRun, GridSet, build_grid_set, run_energy
from .commands import EXIT_CONFIG, EXIT_FAILURE, EXIT_OK, cmd_boundstates, cmd_phaseshifts, cmd_scatter
from .verification import cmd_verify

COMMANDS = {
    "scatter": cmd_scatter,
    "phaseshifts": cmd_phaseshifts,
    "verify": cmd_verify,
    "boundstates": cmd_boundstates,
}

__all__ = [
    'BoundStateConfig', 'BornCheckConfig', 'BoundStateThresholdConfig', 'GridConfig', 'OutputConfig',
    'PotentialConfig', 'RadialConfig', 'RunConfig', 'SolverConfig', 'SquareWellOracleConfig',
    'VerificationThresholds', 'config_hash', 'load_run_config', 'run_config_from_mapping',
    'header_line', 'jsonable', 'read_csv', 'write_csv', 'write_json', 'write_table',
    'Criterion', 'VerificationReport',
    'EnergyRun', 'GridSet', 'build_grid_set', 'run_energy',
    'EXIT_CONFIG', 'EXIT_FAILURE', 'EXIT_OK',
    'cmd_boundstates', 'cmd_phaseshifts', 'cmd_scatter', 'cmd_verify', 'COMMANDS',
]
