"""Shared helpers: disjoint sets, permutations, scalars and worker pools."""

from fractions import Fraction

import numpy as np
import pytest

from ergavg.utils.parallel import ordered_map
from ergavg.utils.parallel import ordered_sum
from ergavg.utils.parallel import worker_count
from ergavg.utils.permutations import CycleIndex
from ergavg.utils.permutations import inverse
from ergavg.utils.permutations import is_permutation
from ergavg.utils.scalars import format_scalar
from ergavg.utils.scalars import parse_scalar
from ergavg.utils.union_find import UnionFind
from ergavg.utils.union_find import orbit_labels


def test_union_find():
    uf = UnionFind(6)
    uf.union(4, 1)
    uf.union(1, 5)
    uf.union(2, 2)
    assert uf.find(5) == uf.find(4)
    assert uf.find(0) != uf.find(1)
    assert list(uf.labels()) == [0, 1, 2, 3, 1, 1]


def test_orbit_labels():
    assert list(orbit_labels(5, [[1, 0, 2, 4, 3]])) == [0, 0, 1, 2, 2]
    assert list(orbit_labels(3, [])) == [0, 1, 2]


def test_cycle_index_powers(rng):
    p = rng.permutation(9)
    cycles = CycleIndex(p)
    power = np.arange(9)
    for k in range(1, 2 * cycles.order + 1):
        power = p[power]
        assert np.array_equal(cycles.power(k), power)
    assert np.array_equal(cycles.power(0), np.arange(9))
    assert np.array_equal(cycles.power(-1), inverse(p))
    assert np.array_equal(cycles.power(cycles.order), np.arange(9))


def test_cycle_order():
    assert CycleIndex([1, 2, 0, 4, 3]).order == 6
    assert CycleIndex([]).order == 1


@pytest.mark.parametrize(
    "p, n, ok",
    [
        [[2, 0, 1], 3, True],
        [[0, 0, 1], 3, False],
        [[0, 1], 3, False],
    ],
)
def test_is_permutation(p, n, ok):
    assert is_permutation(p, n) is ok


@pytest.mark.parametrize(
    "value, exact, expected",
    [
        ["1/4", False, 0.25],
        ["0.25", True, Fraction(1, 4)],
        [0.1, True, Fraction(1, 10)],
        [3, True, Fraction(3)],
        ["1+2j", False, 1 + 2j],
        [Fraction(1, 3), False, 1 / 3],
        [" 2 ", False, 2.0],
    ],
)
def test_parse_scalar(value, exact, expected):
    assert parse_scalar(value, exact=exact) == expected


@pytest.mark.parametrize(
    "value, exact",
    [
        [True, False],
        [1j, True],
        ["x", False],
        ["1/0", True],
    ],
)
def test_parse_scalar_rejects(value, exact):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(value, exact=exact)


@pytest.mark.parametrize(
    "value, text",
    [
        [Fraction(-1, 10), "-1/10"],
        [0.1, "0.1"],
        [1 + 2j, "(1+2j)"],
        [3, "3.0"],
    ],
)
def test_format_scalar(value, text):
    assert format_scalar(value) == text


def test_worker_count(monkeypatch):
    monkeypatch.delenv("ERGAVG_WORKERS", raising=False)
    assert worker_count() == 1
    assert worker_count(default=3) == 3
    monkeypatch.setenv("ERGAVG_WORKERS", "4")
    assert worker_count() == 4
    monkeypatch.setenv("ERGAVG_WORKERS", "0")
    assert worker_count() == 1
    monkeypatch.setenv("ERGAVG_WORKERS", "many")
    assert worker_count(default=2) == 2


def test_ordered_map_keeps_order():
    items = list(range(20))
    assert ordered_map(lambda x: x * x, items, workers=4) == [x * x for x in items]
    assert ordered_map(str, [], workers=4) == []


def test_ordered_sum_is_left_to_right():
    parts = [0.1] * 10
    expected = 0.0
    for part in parts:
        expected += part
    assert ordered_sum(parts, 0.0) == expected
    assert ordered_sum([Fraction(1, 3)] * 3) == 1
