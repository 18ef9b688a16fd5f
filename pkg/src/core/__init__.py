"""
Core module for the reservoir teleportation simulator.
Contains scenario orchestration, the validation suite and logging setup.

Only the logger is re-exported; the physics layer imports it.
"""

from .logger import get_logger, setup_logging

__all__ = [
    "get_logger",
    "setup_logging",
]
