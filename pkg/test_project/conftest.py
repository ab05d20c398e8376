import pathlib

import factory.random

import pytest

from operad_extensions.operads import assoc, com, trivial
from operad_extensions.profiles import ColorSet

# Seed of random sequences and operads built by factories
FACTORY_SEED = 20240917


def pytest_configure() -> None:
    """Make factories deterministic.

    `pytest` automatically calls this function once when tests are run.

    """
    factory.random.reseed_random(FACTORY_SEED)


@pytest.fixture
def colorset() -> ColorSet:
    """Return color set with the single color ``∗``."""
    return ColorSet.single()


@pytest.fixture
def two_colors() -> ColorSet:
    """Return color set ``a < b``."""
    return ColorSet(("a", "b"))


@pytest.fixture
def assoc_operad(colorset: ColorSet):
    """Return associative operad known up to arity 4."""
    return assoc(colorset, arity_bound=4)


@pytest.fixture
def com_operad(colorset: ColorSet):
    """Return commutative operad known up to arity 6."""
    return com(colorset, arity_bound=6)


@pytest.fixture
def trivial_operad(colorset: ColorSet):
    """Return operad of units."""
    return trivial(colorset)


@pytest.fixture
def documents_dir() -> pathlib.Path:
    """Return directory with sample documents."""
    return pathlib.Path(__file__).parent / "documents"
