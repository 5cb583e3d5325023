"""
Utils package for ls_scatter.
Contains logging, constants, the exception hierarchy, validators and thread control.
"""

# Import logger-related functions
from utils.logger import get_logger, start_new_session, set_global_log_level, LOG_LEVELS

from utils.errors import (
    ScatteringError,
    ConfigError,
    PotentialError,
    NonRollnikError,
    GridError,
    ExceptionalValueError,
    SpectrumError,
)
from utils.validators import validate_count, validate_even_count, validate_interval, validate_positive_number
from utils.threads import configure_threads

__all__ = [
    'get_logger', 'start_new_session', 'set_global_log_level', 'LOG_LEVELS',
    'ScatteringError', 'ConfigError', 'PotentialError', 'NonRollnikError', 'GridError',
    'ExceptionalValueError', 'SpectrumError',
    'validate_count', 'validate_even_count', 'validate_interval', 'validate_positive_number',
    'configure_threads',
]
