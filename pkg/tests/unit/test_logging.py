"""
Unit tests for Logging Configuration

Tests logging setup, file rotation, and logger configuration.
"""

import logging
import sys
from unittest.mock import Mock, patch

from src.core.logging import create_rotating_file_handler, get_logger, setup_logging


class TestCreateRotatingFileHandler:
    """Test create_rotating_file_handler function"""

    @patch("src.core.logging.RotatingFileHandler")
    @patch("src.core.logging.Path")
    def test_defaults(self, mock_path, mock_handler_cls):
        """Test creating handler with default settings"""
        mock_handler = Mock()
        mock_handler_cls.return_value = mock_handler

        handler = create_rotating_file_handler("./logs/test.log")

        assert handler == mock_handler
        mock_handler.setFormatter.assert_called_once()
        mock_handler.setLevel.assert_called_once_with(logging.DEBUG)

    @patch("src.core.logging.RotatingFileHandler")
    @patch("src.core.logging.Path")
    def test_custom_size(self, mock_path, mock_handler_cls):
        """Test creating handler with custom size"""
        create_rotating_file_handler("./logs/test.log", max_bytes=5000000, backup_count=3)

        call_kwargs = mock_handler_cls.call_args[1]
        assert call_kwargs["maxBytes"] == 5000000
        assert call_kwargs["backupCount"] == 3

    def test_creates_directory(self, tmp_path):
        """Test that handler creates the log directory if missing"""
        log_path = tmp_path / "nested" / "run.log"

        handler = create_rotating_file_handler(str(log_path), level=logging.WARNING)
        try:
            assert log_path.parent.is_dir()
            assert handler.level == logging.WARNING
        finally:
            handler.close()


class TestSetupLogging:
    """Test setup_logging function"""

    @patch("logging.basicConfig")
    def test_console_goes_to_stderr(self, mock_basic_config):
        """Test console handler writes to stderr so stdout stays JSON-only"""
        with patch("src.core.logging.settings") as mock_settings:
            mock_settings.log_level = "INFO"
            mock_settings.log_to_file = False

            setup_logging()

            call_kwargs = mock_basic_config.call_args[1]
            assert call_kwargs["level"] == logging.INFO
            (handler,) = call_kwargs["handlers"]
            assert handler.stream is sys.stderr

    @patch("logging.basicConfig")
    def test_custom_level(self, mock_basic_config):
        """Test explicit level wins over settings"""
        with patch("src.core.logging.settings") as mock_settings:
            mock_settings.log_level = "INFO"
            mock_settings.log_to_file = False

            setup_logging(log_level="ERROR")

            assert mock_basic_config.call_args[1]["level"] == logging.ERROR

    @patch("logging.basicConfig")
    @patch("logging.getLogger")
    @patch("src.core.logging.create_rotating_file_handler")
    def test_with_file(self, mock_create_handler, mock_get_logger, mock_basic_config):
        """Test file handler is attached when enabled"""
        with patch("src.core.logging.settings") as mock_settings:
            mock_settings.log_level = "DEBUG"
            mock_settings.log_to_file = True
            mock_settings.log_file_path = "./logs/probstream.log"

            mock_root = Mock()
            mock_get_logger.return_value = mock_root
            mock_file_handler = Mock()
            mock_create_handler.return_value = mock_file_handler

            setup_logging()

            mock_create_handler.assert_called_once()
            mock_root.addHandler.assert_called_once_with(mock_file_handler)


class TestGetLogger:
    """Test get_logger function"""

    def test_named_logger(self):
        """Test logger carries the module name"""
        logger = get_logger("src.sketches.gk")
        assert isinstance(logger, logging.Logger)
        assert logger.name == "src.sketches.gk"
