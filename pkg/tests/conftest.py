"""Shared fixtures for the simulator test suite."""

import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT))

from config.settings import Settings  # noqa: E402
from core.logger import setup_logging  # noqa: E402
from physics.spectral import Ohmicity, SpectralParams  # noqa: E402


@pytest.fixture(scope="session")
def settings() -> Settings:
    s = Settings()
    s.logging.level = "WARNING"
    setup_logging(s)
    return s


@pytest.fixture
def super_ohmic() -> SpectralParams:
    return SpectralParams(Ohmicity.integer(3), 0.9, 1.0)


@pytest.fixture
def ohmic() -> SpectralParams:
    return SpectralParams(Ohmicity.integer(1), 0.3, 1.0)


@pytest.fixture
def sub_ohmic() -> SpectralParams:
    return SpectralParams(Ohmicity.half(), 0.55, 1.0)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose the second qubit of a 4x4 density matrix."""
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
