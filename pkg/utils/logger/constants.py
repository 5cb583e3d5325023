"""
Settings of the ls_scatter logging system.

The log directory and the starting level come from the environment so that batch
runs on shared machines can redirect logs without touching the run configuration.
"""

import os
import logging

LOG_LEVELS = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
    'CRITICAL': logging.CRITICAL,
}

LOG_DIR_ENV = 'LS_SCATTER_LOG_DIR'
LOG_LEVEL_ENV = 'LS_SCATTER_LOG_LEVEL'
SESSION_TAG = 'ls_scatter'

DEFAULT_LOG_LEVEL = LOG_LEVELS.get(os.environ.get(LOG_LEVEL_ENV, 'INFO').upper(), logging.INFO)
# run_context is filled by RunContextFilter with the energy and grid being solved
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(run_context)s%(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# one session log holds every energy of a reference run
MAX_LOG_BYTES = 10 * 1024 * 1024
LOG_BACKUPS = 5

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(os.path.abspath(__file__)), '../..'))
LOG_DIR = os.environ.get(LOG_DIR_ENV) or os.path.join(PROJECT_ROOT, 'logs')
# used until start_new_session opens a per-invocation file
LOG_FILE = os.path.join(LOG_DIR, f'{SESSION_TAG}.log')


def ensure_log_dir(directory: str = LOG_DIR) -> bool:
    """Create the log directory; False when it cannot be created or written."""
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        print(f"Error creating log directory {directory}: {e}")
        return False
    if not os.access(directory, os.W_OK):
        print(f"Warning: No write access to log directory: {directory}")
        return False
    return True


_loggers = {}

CURRENT_SESSION_LOG_FILE = None
