"""
Logging configuration for the quantum Carnot tools.
"""

import logging
import sys
from typing import Optional

LOGGER_NAME = "quantum_carnot_pkg"


def setup_logging(log_level=logging.WARNING, log_file: Optional[str] = None) -> logging.Logger:
    """
    Configure the package logger for the console and optionally a file.

    Console output goes to stderr; stdout is reserved for JSON results.

    Args:
        log_level: Logging level (logging.DEBUG, logging.INFO, etc.)
        log_file: Path to save a log file (if None, logs only go to the console)

    Returns:
        The configured package logger; module loggers propagate to it
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(log_level)
    logger.handlers = []
    logger.propagate = False

    formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.setLevel(log_level)
    logger.addHandler(console_handler)

    if log_file:
        try:
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            file_handler.setLevel(log_level)
            logger.addHandler(file_handler)
            logger.info(f"Logging to file: {log_file}")
        except OSError as e:
            logger.error(f"Failed to create log file {log_file}: {e}")

    return logger
