"""
Formatters and filters for ls_scatter log records.

Records emitted while one energy is being solved carry that energy and grid, so the
interleaved stages of a multi-energy run can be told apart in the session log.
"""

import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Optional

COLORS = {
    'RESET': '\033[0m',
    'RED': '\033[31m',
    'GREEN': '\033[32m',
    'YELLOW': '\033[33m',
    'BLUE': '\033[34m',
    'BOLD': '\033[1m',
}

_run_context: ContextVar[str] = ContextVar('ls_scatter_run_context', default='')


def describe_context(energy: Optional[float] = None, grid: str = '') -> str:
    """'lambda=1 grid=24x12x24@6', or the parts that are known."""
    parts = []
    if energy is not None:
        parts.append(f"lambda={energy:g}")
    if grid:
        parts.append(f"grid={grid}")
    return ' '.join(parts)


def current_context() -> str:
    return _run_context.get()


@contextmanager
def run_context(energy: Optional[float] = None, grid: str = '') -> Iterator[str]:
    """
    Tag every record logged inside the block with the energy and grid being solved.

    Contexts nest; the innermost one wins and the outer one is restored on exit.
    """
    token = _run_context.set(describe_context(energy, grid))
    try:
        yield _run_context.get()
    finally:
        _run_context.reset(token)


class RunContextFilter(logging.Filter):
    """Set `record.run_context` to '[<context>] ' or '' outside a run."""

    def filter(self, record: logging.LogRecord) -> bool:
        label = _run_context.get()
        record.run_context = f"[{label}] " if label else ''
        return True


class ColoredFormatter(logging.Formatter):
    """
    Colour the level name of console records.

    Colours are off when the stream is not a terminal or NO_COLOR is set.
    """

    LEVEL_COLORS = {
        logging.DEBUG: COLORS['BLUE'],
        logging.INFO: COLORS['GREEN'],
        logging.WARNING: COLORS['YELLOW'],
        logging.ERROR: COLORS['RED'],
        logging.CRITICAL: COLORS['BOLD'] + COLORS['RED'],
    }

    def __init__(self, fmt=None, datefmt=None, style='%', use_colors=True):
        super().__init__(fmt, datefmt, style)
        self.use_colors = use_colors and 'NO_COLOR' not in os.environ

    def format(self, record: logging.LogRecord) -> str:
        if not hasattr(record, 'run_context'):
            record.run_context = ''
        message = super().format(record)
        if not self.use_colors:
            return message
        color = self.LEVEL_COLORS.get(record.levelno, COLORS['RESET'])
        return message.replace(record.levelname, color + record.levelname + COLORS['RESET'], 1)
