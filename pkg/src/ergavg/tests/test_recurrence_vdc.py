"""Recurrence sets, return times and the van der Corput functional."""

import numpy as np
import pytest

from ergavg.averages.multiple import multi_average_family
from ergavg.averages.recurrence import recurrence_set
from ergavg.averages.recurrence import return_times
from ergavg.averages.vdc import vdc_double_average
from ergavg.combinatorics.grids import GridSet
from ergavg.combinatorics.grids import syndeticity_estimate
from ergavg.exceptions import EmptyWindowError
from ergavg.exceptions import StructureError
from ergavg.systems.factories import random_commuting_pair
from ergavg.systems.factories import rotation_pair
from ergavg.systems.groups import FolnerSequence
from ergavg.systems.groups import FreeAbelian
from ergavg.systems.spaces import Observable


def test_recurrence_set_of_a_rotation():
    pair = rotation_pair(4)
    good = recurrence_set(pair, {0}, 1e-3, ((0, 16), (0, 16)))
    assert good == GridSet.lattice((16, 16), 4, 4)
    assert syndeticity_estimate(good) == 4


def test_recurrence_set_accepts_an_indicator(flip):
    A = Observable(flip.space, [1, 0])
    good = recurrence_set(flip, A, 1e-3, ((-2, 2), (0, 4)))
    assert good.origin == (-2, 0)
    assert good.points() == [(-2, 0), (-2, 2), (0, 0), (0, 2)]


def test_recurrence_set_whole_space():
    pair = rotation_pair(3)
    good = recurrence_set(pair, range(3), 0.5, ((0, 5), (0, 5)))
    assert good == GridSet.full((5, 5))
    assert syndeticity_estimate(good) == 1


def test_return_times():
    pair = rotation_pair(4)
    assert return_times(pair.T, {0}, (0, 12)) == [0, 4, 8]
    assert return_times(pair.T, {0, 2}, (0, 6)) == [0, 2, 4]


def test_recurrence_needs_integer_actions(rng):
    pair = random_commuting_pair(rng, rank=2)
    with pytest.raises(StructureError):
        recurrence_set(pair, {0}, 1e-3, ((0, 4), (0, 4)))
    with pytest.raises(StructureError):
        return_times(pair.T, {0}, (0, 4))


def test_recurrence_rejects_empty_range():
    with pytest.raises(EmptyWindowError):
        recurrence_set(rotation_pair(2), {0}, 1e-3, ((3, 3), (0, 4)))


# van der Corput functional

Z = FreeAbelian(1)


def test_vdc_of_zero_and_constant_families():
    space = rotation_pair(3).space
    seq = FolnerSequence.initial(Z)
    zero = vdc_double_average(lambda g, h: Observable.constant(space, 0.0), seq, seq, 2, 2)
    assert zero == 0
    one = vdc_double_average(lambda g, h: Observable.constant(space, 1.0), seq, seq, 2, 3)
    assert one == pytest.approx(1.0)


def test_vdc_of_the_flip_family(flip, chi):
    # every member of the family is chi itself
    family = multi_average_family(flip, chi, chi, chi)
    seq = FolnerSequence.initial(Z)
    assert list(family((3,), (5,)).values) == list(chi.values)
    assert vdc_double_average(family, seq, seq, 2, 2) == 1


def test_vdc_members_are_cached(flip_float):
    calls = []
    space = flip_float.space

    def family(g, h):
        calls.append((g, h))
        return Observable(space, np.array([1.0, -1.0]) * (-1) ** (g[0] + h[0]))

    seq = FolnerSequence.initial(Z)
    value = vdc_double_average(family, seq, seq, 2, 2)
    assert len(calls) == len(set(calls))
    assert 0 <= value <= 1
