# In file: tests/conftest.py
from pathlib import Path

import pytest

from config import TestConfig
from skernel import create_app
from skernel.simpset import boundary, simplex, sphere

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


class FastSuiteConfig(TestConfig):
    """Tiny instance counts so the whole suite runs inside the quick test pass."""
    SKERNEL_SUITE_SIZES = {
        "small": {
            "snf": 40,
            "tower": 5,
            "complexes": 4,
            "dold_kan": 10,
            "bar": 3,
            "ez": 2,
            "horns": 20,
            "spaces": 3,
            "wrap": 3,
        },
    }


@pytest.fixture(scope="session")
def app():
    return create_app(TestConfig)


@pytest.fixture
def samples():
    return SAMPLES


@pytest.fixture
def fast_config(app):
    return FastSuiteConfig


@pytest.fixture
def circle():
    return sphere(1)


@pytest.fixture
def triangle():
    """∂Δ² pointed at its first vertex."""
    return boundary(2, basepoint="[0]")


@pytest.fixture
def disk():
    return simplex(2, basepoint="[0]")
