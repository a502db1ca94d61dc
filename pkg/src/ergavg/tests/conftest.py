"""Shared fixtures for the ergavg tests."""

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ergavg.systems.actions import CommutingPair
from ergavg.systems.actions import action_from_generators
from ergavg.systems.factories import rotation_pair
from ergavg.systems.groups import FreeAbelian
from ergavg.systems.spaces import FiniteSpace
from ergavg.systems.spaces import Observable

SYSTEMS_DIR = Path(__file__).parent.parent / "configs" / "systems"


@pytest.fixture
def systems_dir():
    """Directory with the shipped example system files."""
    return SYSTEMS_DIR


@pytest.fixture
def rng():
    """Seeded generator, so every test sees the same draws."""
    return np.random.default_rng(20240601)


@pytest.fixture
def flip():
    """``ℤ`` acting on uniform ``ℤ₂`` with ``T = S =`` the flip (exact)."""
    return rotation_pair(2, exact=True)


@pytest.fixture
def flip_float():
    """Float version of :func:`flip`."""
    return rotation_pair(2)


@pytest.fixture
def chi(flip):
    """``χ = (1, -1)`` on the exact flip space."""
    return Observable(flip.space, [1, -1])


@pytest.fixture
def identity3():
    """Identity actions on weights ``(1/2, 1/4, 1/4)`` (exact)."""
    space = FiniteSpace([Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)], exact=True)
    group = FreeAbelian(1)
    return CommutingPair(
        action_from_generators(group, space, [[0, 1, 2]]),
        action_from_generators(group, space, [[0, 1, 2]]),
    )
