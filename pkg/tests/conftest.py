from pathlib import Path

import pytest

from eit_fbp import Circle, Phantom, validate

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def one_perturbation() -> Phantom:
    """The single-perturbation reference phantom: r=10 at (10, 10)."""
    return validate(
        Phantom(40.0, 0.0005, 2.0, 1.0, (Circle(10.0, 10.0, 10.0, 0.0002),))
    )


@pytest.fixture
def two_perturbation() -> Phantom:
    """Two disjoint perturbations at (10, 14) and (-12, -10)."""
    return validate(
        Phantom(
            40.0,
            0.0005,
            2.0,
            1.0,
            (Circle(10.0, 14.0, 8.0, 0.0002), Circle(-12.0, -10.0, 12.0, 0.000199)),
        )
    )


@pytest.fixture
def homogeneous() -> Phantom:
    return validate(Phantom(40.0, 0.0005, 2.0, 1.0))
