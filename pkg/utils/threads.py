"""
Thread-count control for the numba kernels.
"""
import os
from typing import Optional

from utils.constants import THREADS_ENV_VAR
from utils.errors import ConfigError
from utils.logger import get_logger

logger = get_logger(__name__)


def configure_threads(configured: Optional[int] = None) -> int:
    """
    Apply the numba thread count from the environment or the run configuration.

    Args:
        configured: Thread count from solver.threads; LS_SCATTER_THREADS takes precedence when set

    Returns:
        int: The thread count in effect afterwards
    """
    import numba

    requested = configured
    raw = os.environ.get(THREADS_ENV_VAR, "").strip()
    if raw:
        try:
            requested = int(raw)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")

    if requested is not None:
        if requested < 1:
            raise ConfigError(f"Thread count must be positive, got {requested}")
        requested = min(requested, numba.config.NUMBA_NUM_THREADS)
        numba.set_num_threads(requested)
        logger.info(f"Using {requested} numba threads")

    return numba.get_num_threads()
