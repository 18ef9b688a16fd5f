"""
Logging configuration for the reservoir teleportation simulator.
Provides structured logging with rich console output and an optional rotating log file.
"""

import logging
import logging.handlers
from pathlib import Path
from typing import Optional

import structlog
from rich.console import Console
from rich.logging import RichHandler

_APP_LOGGER = "teleport"


def setup_logging(settings) -> None:
    """Configure stdlib logging and structlog from ``settings.logging``."""
    log_settings = settings.logging
    level = getattr(logging, log_settings.level.upper(), logging.INFO)

    handlers = [
        RichHandler(
            console=Console(stderr=True),
            show_time=True,
            show_path=False,
            markup=False,
            rich_tracebacks=True,
        )
    ]

    if log_settings.log_file:
        log_file_path = Path(log_settings.log_file)
        log_file_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            filename=log_file_path,
            maxBytes=_parse_size(log_settings.log_rotation_size),
            backupCount=log_settings.log_backup_count,
            encoding="utf-8",
        )
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )
        handlers.append(file_handler)

    logging.basicConfig(level=level, format="%(message)s", datefmt="[%X]", handlers=handlers, force=True)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer() if log_settings.json_logs
            else structlog.dev.ConsoleRenderer(colors=False),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    _configure_logger_levels(level)


def _parse_size(size_str: str) -> int:
    """Parse size string like '10MB' to bytes."""
    size_str = size_str.strip().upper()
    units = {"KB": 1024, "MB": 1024 ** 2, "GB": 1024 ** 3}
    for suffix, factor in units.items():
        if size_str.endswith(suffix):
            return int(size_str[:-2]) * factor
    return int(size_str)


def _configure_logger_levels(level: int) -> None:
    """Quiet third-party libraries; our loggers follow the configured level."""
    logging.getLogger("matplotlib").setLevel(logging.WARNING)
    logging.getLogger("asyncio").setLevel(logging.WARNING)
    logging.getLogger(_APP_LOGGER).setLevel(level)


def get_logger(name: Optional[str] = None) -> structlog.BoundLogger:
    """Get a structured logger under the application namespace."""
    return structlog.get_logger(f"{_APP_LOGGER}.{name}" if name else _APP_LOGGER)


class LoggerMixin:
    """Gives a class a ``logger`` named after the class."""

    @property
    def logger(self) -> structlog.BoundLogger:
        return get_logger(self.__class__.__name__)


def get_solver_logger() -> structlog.BoundLogger:
    """Logger for the numerical solvers."""
    return get_logger("solver")


def get_pipeline_logger() -> structlog.BoundLogger:
    """Logger for scenario pipelines and validation."""
    return get_logger("pipeline")


def get_cli_logger() -> structlog.BoundLogger:
    """Logger for the command-line front end."""
    return get_logger("cli")
