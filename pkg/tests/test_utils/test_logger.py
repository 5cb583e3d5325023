"""
Tests for logger package in utils/logger.
"""
import logging
from unittest.mock import patch, MagicMock, mock_open

import pytest

from utils.logger import (
    get_logger,
    set_global_log_level,
    start_new_session,
    log_system_info,
    collect_system_info,
    ColoredFormatter,
    COLORS,
    RunContextFilter,
    current_context,
    ensure_log_dir,
    run_context,
    LOG_LEVELS,
    DEFAULT_LOG_LEVEL,
    LOG_FORMAT,
    DATE_FORMAT,
    LOG_DIR,
    LOG_FILE
)

# Import the module for direct access
import utils.logger.system_info
from utils.logger.core import _make_file_handler


class TestLoggerConstants:
    """Test suite for logger constants."""

    def test_logger_constants(self):
        """Test that logger constants are properly defined."""
        for name in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            assert name in LOG_LEVELS

        assert DEFAULT_LOG_LEVEL in [logging.DEBUG, logging.INFO, logging.WARNING,
                                     logging.ERROR, logging.CRITICAL]
        assert LOG_FORMAT
        assert DATE_FORMAT
        assert LOG_DIR
        assert LOG_FILE.endswith("ls_scatter.log")
        assert "%(run_context)s" in LOG_FORMAT

    def test_ensure_log_dir(self, tmp_path):
        target = tmp_path / "nested" / "logs"
        assert ensure_log_dir(str(target)) is True
        assert target.is_dir()

    def test_ensure_log_dir_failure(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        assert ensure_log_dir(str(blocker / "logs")) is False


class TestLoggerCore:
    """Test suite for core logger functionality."""

    @patch('logging.getLogger')
    def test_get_logger(self, mock_get_logger):
        """Test get_logger returns the correct logger instance."""
        mock_logger = MagicMock()
        mock_get_logger.return_value = mock_logger

        logger = get_logger("tests.mocked_module")

        mock_get_logger.assert_called_once_with("tests.mocked_module")
        assert logger == mock_logger
        assert mock_logger.propagate is False

    def test_get_logger_is_cached(self):
        """The same name returns the same configured logger."""
        first = get_logger("tests.cached_module")
        second = get_logger("tests.cached_module")
        assert first is second
        assert first.handlers

    def test_set_global_log_level(self):
        """Test setting global log level on registered loggers and the root logger."""
        logger = get_logger("tests.level_module")
        try:
            with patch('logging.getLogger') as mock_get_logger:
                mock_root_logger = MagicMock()
                mock_get_logger.return_value = mock_root_logger
                set_global_log_level("warning")

            mock_get_logger.assert_called_once_with()
            mock_root_logger.setLevel.assert_called_once_with(logging.WARNING)
            assert logger.level == logging.WARNING
        finally:
            set_global_log_level(logging.INFO)


class TestLoggerSession:
    """Test suite for logger session management."""

    @patch('utils.logger.core.get_logger')
    @patch('os.makedirs')
    def test_start_new_session(self, mock_makedirs, mock_get_logger):
        """Test starting a new logging session."""
        mock_logger = MagicMock()
        mock_get_logger.return_value = mock_logger

        with patch('utils.logger.constants.CURRENT_SESSION_LOG_FILE', None), \
                patch('utils.logger.core._update_file_handlers') as mock_update, \
                patch('os.path.exists', return_value=False), \
                patch('builtins.open', mock_open()), \
                patch('utils.logger.core.log_system_info') as mock_log_system_info:
            start_new_session()

        mock_makedirs.assert_called_once()
        mock_get_logger.assert_called_with("ls_scatter")
        mock_log_system_info.assert_called_once_with(mock_logger)
        assert mock_logger.info.call_count >= 1
        # os.path.exists was patched to False
        mock_logger.error.assert_called_once()
        if mock_update.called:
            assert mock_update.call_args[0][0].endswith(".log")


class TestSystemInfo:
    """Test suite for system information collection and logging."""

    def test_collect_system_info(self):
        """Collected info covers memory, CPU and the numerical library versions."""
        info = collect_system_info()
        for key in ("platform", "python_version", "total_memory_gb", "numpy_version",
                    "scipy_version", "numba_version", "numba_threads"):
            assert key in info
        assert info["total_memory_gb"] > 0

    def test_log_system_info(self):
        """Test system info logging without actually collecting system info."""
        mock_system_info = {"platform": "Test Platform", "available_memory_gb": 8.0, "numba_threads": 4}

        mock_logger = MagicMock()
        mock_handler = MagicMock(spec=logging.FileHandler)
        mock_handler.baseFilename = "/tmp/test.log"
        mock_logger.handlers = [mock_handler]

        with patch.object(utils.logger.system_info, 'collect_system_info', return_value=mock_system_info) as mock_collect, \
                patch.object(utils.logger.system_info, 'write_system_info_section') as mock_write:
            log_system_info(mock_logger)

        mock_collect.assert_called_once()
        mock_write.assert_called_once_with("/tmp/test.log", mock_system_info)
        mock_logger.debug.assert_called_once()

    def test_log_system_info_failure_is_logged(self):
        """A failing collection is reported, not raised."""
        mock_logger = MagicMock()
        with patch.object(utils.logger.system_info, 'collect_system_info', side_effect=RuntimeError("boom")):
            log_system_info(mock_logger)
        mock_logger.error.assert_called_once()


class TestColoredFormatter:
    """Test suite for colored log formatter."""

    def _record(self, level):
        return logging.LogRecord(name="test_logger", level=level, pathname="test_path", lineno=42,
                                 msg="Test message", args=(), exc_info=None)

    def test_colored_formatter(self):
        """Test ColoredFormatter formats log messages correctly."""
        formatter = ColoredFormatter(fmt="%(levelname)s - %(message)s")
        formatted = formatter.format(self._record(logging.INFO))

        assert "INFO" in formatted
        assert "Test message" in formatted

    @pytest.mark.parametrize("use_colors", [True, False])
    def test_color_codes(self, use_colors):
        """Colour codes appear only when enabled."""
        formatter = ColoredFormatter(fmt="%(levelname)s - %(message)s", use_colors=use_colors)
        formatter.use_colors = use_colors
        formatted = formatter.format(self._record(logging.ERROR))
        assert (COLORS['RED'] in formatted) is use_colors

    def test_context_only_when_set(self):
        formatter = ColoredFormatter(fmt="%(run_context)s%(message)s", use_colors=False)
        assert formatter.format(self._record(logging.INFO)) == "Test message"

    def test_no_color_environment(self):
        with patch.dict('os.environ', {'NO_COLOR': '1'}):
            formatter = ColoredFormatter(fmt="%(levelname)s", use_colors=True)
        assert formatter.use_colors is False


class TestRunContext:
    """Records logged while an energy is solved carry its energy and grid."""

    def _filtered(self):
        record = logging.LogRecord(name="ctx", level=logging.INFO, pathname="p", lineno=1,
                                   msg="solving", args=(), exc_info=None)
        RunContextFilter().filter(record)
        return record

    def test_outside_a_run(self):
        assert current_context() == ""
        assert self._filtered().run_context == ""

    def test_energy_and_grid(self):
        with run_context(1.5, "24x12x24@6") as label:
            assert label == "lambda=1.5 grid=24x12x24@6"
            assert self._filtered().run_context == "[lambda=1.5 grid=24x12x24@6] "
        assert current_context() == ""

    def test_nested_contexts_restore(self):
        with run_context(1.0, "8x6x12@2"):
            with run_context(grid="4x3x6@2"):
                assert current_context() == "grid=4x3x6@2"
            assert current_context() == "lambda=1 grid=8x6x12@2"

    def test_reset_after_exception(self):
        with pytest.raises(RuntimeError):
            with run_context(2.0):
                raise RuntimeError("singular")
        assert current_context() == ""

    def test_file_records_carry_context(self, tmp_path):
        logger = get_logger("tests.context_module")
        logger.setLevel(logging.INFO)
        path = tmp_path / "ctx.log"
        handler = _make_file_handler(str(path), logging.INFO)
        logger.addHandler(handler)
        try:
            with run_context(1.0, "8x6x12@2"):
                logger.info("assembling")
            handler.flush()
            assert "[lambda=1 grid=8x6x12@2] assembling" in path.read_text(encoding="utf-8")
        finally:
            logger.removeHandler(handler)
            handler.close()
