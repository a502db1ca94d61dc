"""Finite spaces, partitions, conditional expectation and relative products."""

from fractions import Fraction

import numpy as np
import pytest

from ergavg.exceptions import DimensionError
from ergavg.exceptions import StructureError
from ergavg.systems.spaces import FiniteSpace
from ergavg.systems.spaces import Observable
from ergavg.systems.spaces import Partition
from ergavg.systems.spaces import conditional_expectation
from ergavg.systems.spaces import disintegration
from ergavg.systems.spaces import inner_product
from ergavg.systems.spaces import relative_product

HALF_QUARTERS = ["1/2", "1/4", "1/4"]


@pytest.fixture
def sp():
    return FiniteSpace(HALF_QUARTERS, exact=True)


@pytest.mark.parametrize(
    "weights, exact, match",
    [
        [[0.5, 0.25], False, "sum to"],
        [["1/2", "1/3"], True, "sum to"],
        [[1.0, 0.0], False, "strictly positive"],
        [["3/2", "-1/2"], True, "strictly positive"],
        [[], False, "sum to"],
    ],
)
def test_space_rejects(weights, exact, match):
    with pytest.raises(StructureError, match=match):
        FiniteSpace(weights, exact=exact)


def test_space_modes(sp):
    assert sp.exact
    assert sp.n == 3
    assert list(sp.weights) == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]
    fl = FiniteSpace(HALF_QUARTERS)
    assert not fl.exact
    assert fl.weights.dtype == float
    assert FiniteSpace.uniform(4, exact=True).weights[0] == Fraction(1, 4)
    assert not sp.compatible(fl)
    assert sp.compatible(FiniteSpace(HALF_QUARTERS, exact=True))


def test_observable_coercion(sp):
    f = Observable(sp, [1, "1/3", 0.5])
    assert all(isinstance(v, Fraction) for v in f.values)
    assert f.values[1] == Fraction(1, 3)
    with pytest.raises(DimensionError, match="expected 3 values"):
        Observable(sp, [1, 2])
    with pytest.raises(ValueError):
        f.values[0] = 7


def test_observable_arithmetic(sp):
    f = Observable(sp, [4, 8, 0])
    g = Observable(sp, [1, 2, 3])
    assert list((f + g).values) == [5, 10, 3]
    assert list((f - g).values) == [3, 6, -3]
    assert list((f * g).values) == [4, 16, 0]
    assert list((2 * g).values) == [2, 4, 6]
    assert list((-g).values) == [-1, -2, -3]
    assert f.integral() == 4
    assert (f * g).integral() == Fraction(6)
    assert f.spread() == 8.0
    assert Observable.constant(sp, 3).is_constant()
    assert not f.is_constant(tolerance=7.9)
    other = Observable(FiniteSpace.uniform(2, exact=True), [1, 1])
    with pytest.raises(DimensionError):
        f + other


def test_complex_observables():
    sp = FiniteSpace.uniform(2)
    f = Observable(sp, [1j, 1])
    assert f.values.dtype == complex
    assert list(f.conj().values) == [-1j, 1]
    assert f.norm() == pytest.approx(1.0)
    assert inner_product(f, f, sp) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "labels, blocks",
    [
        [[0, 1, 1], 2],
        [[5, 5, 5], 1],
        [[2, 0, 1], 3],
    ],
)
def test_partition_canonical(sp, labels, blocks):
    p = Partition(sp, labels)
    assert p.blocks == blocks
    assert p.block_of[0] == 0
    assert p == Partition.from_blocks(sp, [m.tolist() for m in p.members()])


def test_partition_relations(sp):
    a = Partition.from_blocks(sp, [[0, 1], [2]])
    b = Partition.from_blocks(sp, [[0], [1, 2]])
    assert Partition.discrete(sp).refines(a)
    assert a.refines(Partition.trivial(sp))
    assert not a.refines(b)
    assert Partition.trivial(sp).coarsens(b)
    assert a.join(b) == Partition.trivial(sp)
    assert a.join(Partition.discrete(sp)) == a
    assert list(b.block_masses()) == [Fraction(1, 2), Fraction(1, 2)]


@pytest.mark.parametrize(
    "blocks, match",
    [
        [[[0, 1], [1, 2]], "two blocks"],
        [[[0], [1]], "no block"],
    ],
)
def test_partition_from_blocks_rejects(sp, blocks, match):
    with pytest.raises(StructureError, match=match):
        Partition.from_blocks(sp, blocks)


def test_conditional_expectation_by_hand(sp):
    p = Partition.from_blocks(sp, [[0], [1, 2]])
    f = Observable(sp, [4, 8, 0])
    assert list(conditional_expectation(f, p).values) == [4, 4, 4]


def test_conditional_expectation_trivial_cases(sp, rng):
    f = Observable(sp, [Fraction(int(v), 7) for v in rng.integers(-7, 8, size=3)])
    assert list(conditional_expectation(f, Partition.discrete(sp)).values) == list(f.values)
    for p in (Partition.trivial(sp), Partition(sp, [0, 1, 0])):
        e = conditional_expectation(Observable.constant(sp, "2/3"), p)
        assert set(e.values) == {Fraction(2, 3)}


def test_conditional_expectation_is_projection(rng):
    sp = FiniteSpace([0.1, 0.2, 0.3, 0.4])
    p = Partition(sp, [0, 1, 0, 1])
    f = Observable(sp, rng.uniform(-1, 1, 4))
    e = conditional_expectation(f, p)
    again = conditional_expectation(e, p)
    assert np.max(np.abs(again.values - e.values)) <= 1e-12
    # f - E(f|p) is orthogonal to block-constant functions
    for block in range(p.blocks):
        indicator = Observable(sp, (p.block_of == block).astype(float))
        assert abs(inner_product(f - e, indicator, sp)) <= 1e-12


def test_conditional_expectation_mismatch(sp):
    other = FiniteSpace.uniform(3, exact=True)
    with pytest.raises(DimensionError):
        conditional_expectation(Observable(other, [1, 2, 3]), Partition.trivial(sp))


def test_disintegration(sp):
    trivial = disintegration(sp, Partition.trivial(sp))
    for x in range(3):
        assert list(trivial.measure(x)) == list(sp.weights)
    discrete = disintegration(sp, Partition.discrete(sp))
    for x in range(3):
        assert list(discrete.measure(x)) == [int(x == z) for z in range(3)]
    split = disintegration(sp, Partition.from_blocks(sp, [[0], [1, 2]]))
    half = Fraction(1, 2)
    assert list(split.measure(1)) == [0, half, half]
    assert list(split.measure(2)) == [0, half, half]
    f = Observable(sp, [4, 8, 0])
    assert list(split.integrate(f).values) == [4, 4, 4]
    assert split.reconstitute(f) == f.integral()


def test_relative_product_discrete(sp):
    pairs = relative_product(sp, Partition.discrete(sp))
    assert pairs.pairs() == [(0, 0), (1, 1), (2, 2)]
    assert list(pairs.weights) == list(sp.weights)


def test_relative_product_full():
    sp = FiniteSpace(["1/2", "1/2"], exact=True)
    pairs = relative_product(sp, Partition.trivial(sp))
    assert len(pairs) == 4
    assert set(pairs.weights) == {Fraction(1, 4)}
    f = Observable(sp, [3, "1/2"])
    g = Observable(sp, [-1, 5])
    assert pairs.space.integrate(pairs.tensor(f, g).values) == f.integral() * g.integral()
    left, right = pairs.marginals()
    assert list(left) == list(sp.weights) == list(right)
    assert pairs.index[1, 0] == pairs.pairs().index((1, 0))


def test_relative_product_block_weights(sp):
    pairs = relative_product(sp, Partition.from_blocks(sp, [[0], [1, 2]]))
    masses = dict(zip(pairs.pairs(), pairs.weights))
    assert masses == {
        (0, 0): Fraction(1, 2),
        (1, 1): Fraction(1, 8),
        (1, 2): Fraction(1, 8),
        (2, 1): Fraction(1, 8),
        (2, 2): Fraction(1, 8),
    }
    assert pairs.index[0, 1] == -1


def test_inner_product_examples():
    sp = FiniteSpace(["1/2", "1/2"], exact=True)
    one = Observable.constant(sp, 1)
    assert inner_product(one, one, sp) == 1
    assert inner_product(Observable(sp, [1, -1]), one, sp) == 0


def test_inner_product_after_orthogonalizing(rng):
    sp = FiniteSpace([0.2, 0.3, 0.5])
    f = Observable(sp, rng.uniform(-1, 1, 3))
    g = Observable(sp, rng.uniform(-1, 1, 3))
    h = f - g * (inner_product(f, g, sp) / inner_product(g, g, sp))
    assert abs(inner_product(h, g, sp)) <= 1e-12


# randomized exact identities


def random_exact_space(rng, n):
    masses = [int(m) for m in rng.integers(1, 6, size=n)]
    total = sum(masses)
    return FiniteSpace([Fraction(m, total) for m in masses], exact=True)


def random_exact_observable(sp, rng):
    tops = rng.integers(-9, 10, size=sp.n)
    bottoms = rng.integers(1, 5, size=sp.n)
    return Observable(sp, [Fraction(int(a), int(b)) for a, b in zip(tops, bottoms)])


def random_partitions(rng):
    """A random exact space with a partition and a coarsening of it."""
    n = int(rng.integers(2, 10))
    sp = random_exact_space(rng, n)
    fine = Partition(sp, rng.integers(0, n, size=n))
    coarse = Partition(sp, rng.integers(0, 2, size=fine.blocks)[fine.block_of])
    return sp, fine, coarse


@pytest.mark.parametrize("seed", range(20))
def test_tower_property(seed):
    rng = np.random.default_rng(seed)
    sp, fine, coarse = random_partitions(rng)
    assert fine.refines(coarse)
    for _ in range(5):
        f = random_exact_observable(sp, rng)
        expected = list(conditional_expectation(f, coarse).values)
        through_fine = conditional_expectation(conditional_expectation(f, fine), coarse)
        assert list(through_fine.values) == expected
        after_coarse = conditional_expectation(conditional_expectation(f, coarse), fine)
        assert list(after_coarse.values) == expected


@pytest.mark.parametrize("seed", range(20))
def test_conditional_expectation_is_self_adjoint(seed):
    rng = np.random.default_rng(100 + seed)
    sp, fine, coarse = random_partitions(rng)
    for p in (fine, coarse):
        for _ in range(5):
            f, g = random_exact_observable(sp, rng), random_exact_observable(sp, rng)
            left = inner_product(conditional_expectation(f, p), g, sp)
            right = inner_product(f, conditional_expectation(g, p), sp)
            assert left == right


@pytest.mark.parametrize("seed", range(20))
def test_disintegration_reconstitutes(seed):
    rng = np.random.default_rng(200 + seed)
    sp, fine, _ = random_partitions(rng)
    measures = disintegration(sp, fine)
    for x in range(sp.n):
        assert sum(measures.measure(x)) == 1
    for _ in range(25):
        f = random_exact_observable(sp, rng)
        assert measures.reconstitute(f) == f.integral()
        assert list(measures.integrate(f).values) == list(conditional_expectation(f, fine).values)


@pytest.mark.parametrize("seed", range(20))
def test_relative_product_marginals(seed):
    rng = np.random.default_rng(300 + seed)
    sp, fine, _ = random_partitions(rng)
    pairs = relative_product(sp, fine)
    left, right = pairs.marginals()
    assert list(left) == list(sp.weights) == list(right)
    for w, z in pairs.pairs():
        assert fine.block_of[w] == fine.block_of[z]
    for _ in range(5):
        f, g = random_exact_observable(sp, rng), random_exact_observable(sp, rng)
        product = conditional_expectation(f, fine) * conditional_expectation(g, fine)
        assert pairs.space.integrate(pairs.tensor(f, g).values) == product.integral()
