"""
Core logging functionality for ls_scatter.
"""

import os
import sys
import logging
from logging.handlers import RotatingFileHandler
from datetime import datetime
from typing import Optional, Union

from . import constants
from .constants import LOG_LEVELS, LOG_FORMAT, DATE_FORMAT, LOG_BACKUPS, MAX_LOG_BYTES, SESSION_TAG, _loggers
from .system_info import log_system_info
from .formatters import ColoredFormatter, RunContextFilter


def _make_file_handler(log_file: str, level: int) -> RotatingFileHandler:
    handler = RotatingFileHandler(log_file, maxBytes=MAX_LOG_BYTES, backupCount=LOG_BACKUPS)
    handler.setFormatter(ColoredFormatter(LOG_FORMAT, DATE_FORMAT, use_colors=False))
    handler.addFilter(RunContextFilter())
    handler.setLevel(level)
    return handler


def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
    """
    Get a logger configured with a coloured console handler and a rotating file handler.

    Args:
        name: The name of the logger (typically __name__ of the module)
        level: Optional specific log level for this logger

    Returns:
        A configured logger instance
    """
    if name in _loggers:
        return _loggers[name]

    logger = logging.getLogger(name)
    logger.setLevel(level or constants.DEFAULT_LOG_LEVEL)
    # Handlers live on each named logger; keep records away from the root logger
    logger.propagate = False

    if not logger.handlers:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setFormatter(
            ColoredFormatter(LOG_FORMAT, DATE_FORMAT, use_colors=sys.stdout.isatty())
        )
        console_handler.addFilter(RunContextFilter())
        logger.addHandler(console_handler)

        log_file = constants.CURRENT_SESSION_LOG_FILE or constants.LOG_FILE
        try:
            constants.ensure_log_dir(os.path.dirname(log_file))
            logger.addHandler(_make_file_handler(log_file, logger.level))
        except Exception as e:
            print(f"Warning: Could not set up file logging to {log_file}: {e}")

    _loggers[name] = logger
    return logger


def set_global_log_level(level: Union[int, str]) -> None:
    """
    Set the log level for all loggers.

    Args:
        level: The log level (either a string name or integer value)
    """
    if isinstance(level, str):
        level = LOG_LEVELS.get(level.upper(), constants.DEFAULT_LOG_LEVEL)

    constants.DEFAULT_LOG_LEVEL = level

    for logger in _loggers.values():
        logger.setLevel(level)
        for handler in logger.handlers:
            handler.setLevel(level)

    logging.getLogger().setLevel(level)


def _update_file_handlers(new_log_file: str) -> None:
    """
    Point every registered logger at a new log file.

    Args:
        new_log_file: Path to the new log file
    """
    for logger in _loggers.values():
        for handler in logger.handlers[:]:
            if isinstance(handler, logging.FileHandler):
                logger.removeHandler(handler)
                handler.close()
        try:
            logger.addHandler(_make_file_handler(new_log_file, logger.level))
        except Exception as e:
            logger.error(f"Failed to update file handler: {e}")


def start_new_session(tag: str = SESSION_TAG) -> logging.Logger:
    """
    Start a new logging session with its own log file.
    Call this once at the beginning of a CLI invocation.

    Args:
        tag: Prefix of the session log file name

    Returns:
        Session logger for the application
    """
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    session_file = os.path.join(constants.LOG_DIR, f"{tag}_{timestamp}.log")

    constants.ensure_log_dir(os.path.dirname(session_file))

    constants.CURRENT_SESSION_LOG_FILE = session_file
    if _loggers:
        _update_file_handlers(session_file)

    root_logger = get_logger(SESSION_TAG)

    separator = f"\n{'=' * 80}\n"
    root_logger.info(f"{separator}NEW SESSION STARTED AT {datetime.now().strftime(DATE_FORMAT)}{separator}")

    if os.path.exists(session_file):
        root_logger.debug(f"Log file created at: {session_file}")
    else:
        root_logger.error(f"Failed to create log file at: {session_file}")

    log_system_info(root_logger)

    return root_logger
