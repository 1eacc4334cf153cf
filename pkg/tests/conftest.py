"""Shared pytest fixtures. Puts `src` on the import path the way the scripts in `tests/` always have."""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from categories.site import standard_catalog  # noqa: E402


@pytest.fixture(scope="session")
def repo_root() -> Path:
    return ROOT


@pytest.fixture(scope="session")
def catalog1():
    """Standard catalog with representations up to dimension 1."""
    return standard_catalog(dim_cap=1)


@pytest.fixture(scope="session")
def catalog2():
    """Standard catalog with representations up to dimension 2."""
    return standard_catalog(dim_cap=2)
