"""
Shared pytest fixtures for the alpharm suite
"""

import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from services.alpharm.config import reset_settings  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test sees default settings unless it sets ALPHARM_* itself"""
    for name in list(os.environ):
        if name.startswith("ALPHARM_"):
            monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()
