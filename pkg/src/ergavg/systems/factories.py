"""
System factories
================

Factories build commuting pairs that fit a pattern: the skew-product
example class, rotations of a cyclic group, the left/right multiplication
pair of a finite group, one-point systems, and the random families used
by the property batteries: disjoint unions of torus rotations, skew
products with random cocycles and unions of finite-group copies.

.. autosummary::

    ~skew_product_example
    ~rotation_pair
    ~multiplication_pair
    ~point_pair
    ~random_commuting_pair
    ~random_skew_product
    ~small_tables
    ~random_table_pair
    ~random_system
    ~random_observable
"""

import functools
import logging
from fractions import Fraction

import numpy as np

from ..exceptions import StructureError
from .actions import CommutingPair
from .actions import action_from_generators
from .groups import FiniteTable
from .groups import FreeAbelian
from .spaces import FiniteSpace
from .spaces import Observable

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

RANDOM_DENOMINATOR = 16
RANDOM_KINDS = ("torus", "skew", "table")


def _cocycle(values, size, r, name):
    """Validate a cocycle ``ℤ_size → ℤ_r`` given as a sequence or callable."""
    if callable(values):
        values = [values(y) for y in range(size)]
    values = [int(v) for v in values]
    if len(values) != size:
        raise StructureError(f"{name} needs {size} values, got {len(values)}")
    bad = [y for y, v in enumerate(values) if not 0 <= v < r]
    if bad:
        raise StructureError(f"{name} has values outside ℤ_{r} at {bad}")
    return values


def skew_product_example(p, q, r, tau, sigma, *, exact=False):
    """
    Skew-product pair on ``ℤ_p × ℤ_q × ℤ_r`` with uniform weights.

    ``T(y0, y1, k) = (y0 + 1, y1, k + tau(y0))`` and
    ``S(y0, y1, k) = (y0, y1 + 1, k - sigma(y1))``.  The point
    ``(y0, y1, k)`` has index ``(y0·q + y1)·r + k``.

    PARAMETERS

    p, q, r : int
        Orders of the two base rotations and of the fiber group.
    tau : sequence or callable
        Cocycle ``ℤ_p → ℤ_r`` of ``T``.
    sigma : sequence or callable
        Cocycle ``ℤ_q → ℤ_r`` of ``S``.
    exact : bool
        Use rational weights.
    """
    for name, value in (("p", p), ("q", q), ("r", r)):
        if int(value) < 1:
            raise StructureError(f"{name} must be >= 1, not {value}")
    tau = _cocycle(tau, p, r, "tau")
    sigma = _cocycle(sigma, q, r, "sigma")
    y0, y1, k = np.meshgrid(np.arange(p), np.arange(q), np.arange(r), indexing="ij")
    y0, y1, k = y0.ravel(), y1.ravel(), k.ravel()
    tau, sigma = np.array(tau), np.array(sigma)

    def index(a, b, c):
        return (a * q + b) * r + c

    t_map = index((y0 + 1) % p, y1, (k + tau[y0]) % r)
    s_map = index(y0, (y1 + 1) % q, (k - sigma[y1]) % r)
    space = FiniteSpace.uniform(p * q * r, exact=exact)
    group = FreeAbelian(1)
    pair = CommutingPair(
        action_from_generators(group, space, [t_map]),
        action_from_generators(group, space, [s_map]),
    )
    logger.debug("skew product p=%d q=%d r=%d tau=%s sigma=%s", p, q, r, tau, sigma)
    return pair


def rotation_pair(m, t=1, s=1, *, exact=False):
    """``ℤ`` acting on uniform ``ℤ_m``: ``T`` by ``+t`` and ``S`` by ``+s``."""
    space = FiniteSpace.uniform(m, exact=exact)
    group = FreeAbelian(1)
    x = np.arange(m)
    return CommutingPair(
        action_from_generators(group, space, [(x + t) % m]),
        action_from_generators(group, space, [(x + s) % m]),
    )


def multiplication_pair(group, *, exact=False):
    """
    A finite group acting on itself: ``T_g x = g·x`` and ``S_g x = x·g⁻¹``.

    Left and right multiplication commute, so this is a commuting pair
    even for non-abelian tables.
    """
    if not isinstance(group, FiniteTable):
        raise StructureError("multiplication pairs need a finite table")
    m = group.order
    space = FiniteSpace.uniform(m, exact=exact)
    left = [[group.compose(g, x) for x in range(m)] for g in range(m)]
    right = [[group.compose(x, group.inverse(g)) for x in range(m)] for g in range(m)]
    return CommutingPair(
        action_from_generators(group, space, left),
        action_from_generators(group, space, right),
    )


def point_pair(group, *, exact=False):
    """The one-point system with both actions trivial."""
    space = FiniteSpace.uniform(1, exact=exact)
    count = group.order if isinstance(group, FiniteTable) else group.rank
    fixed = [[0]] * count
    return CommutingPair(
        action_from_generators(group, space, fixed),
        action_from_generators(group, space, fixed),
    )


def _torus_shapes(rng, components, max_points):
    shapes = []
    budget = max_points
    for _ in range(components):
        if budget < 1:
            break
        a = int(rng.integers(1, min(4, budget) + 1))
        b = int(rng.integers(1, min(4, budget // a) + 1))
        shapes.append((a, b))
        budget -= a * b
    return shapes


def random_commuting_pair(rng, *, max_points=24, rank=None, components=None, exact=False):
    """
    A random commuting pair of ``ℤ^rank`` actions.

    The space is a disjoint union of tori ``ℤ_a × ℤ_b`` (``a, b ≤ 4``),
    each with its own constant weight; every generator of ``T`` and ``S``
    translates each torus by a random vector.  Points are relabelled by a
    random permutation.

    PARAMETERS

    rng : numpy.random.Generator
        Source of randomness.
    max_points : int
        Upper bound on the number of points.
    rank : int
        ``d`` in ``ℤ^d``; random in ``{1, 2}`` if omitted.
    components : int
        Number of tori; random in ``{1, 2, 3}`` if omitted.
    exact : bool
        Use rational weights.
    """
    rank = int(rng.integers(1, 3)) if rank is None else int(rank)
    components = int(rng.integers(1, 4)) if components is None else int(components)
    shapes = _torus_shapes(rng, components, max_points)
    n = sum(a * b for a, b in shapes)
    relabel = rng.permutation(n)
    masses = [Fraction(int(rng.integers(1, 5))) for _ in shapes]
    total = sum(masses)
    weights = [Fraction(0)] * n
    images = [np.empty(n, dtype=np.int64) for _ in range(2 * rank)]
    offset = 0
    for (a, b), mass in zip(shapes, masses):
        w = mass / (total * a * b)
        shifts = rng.integers(0, [a, b], size=(2 * rank, 2))
        for i in range(a):
            for j in range(b):
                x = relabel[offset + i * b + j]
                weights[x] = w
                for image, (s0, s1) in zip(images, shifts):
                    image[x] = relabel[offset + ((i + s0) % a) * b + (j + s1) % b]
        offset += a * b
    if not exact:
        weights = [float(w) for w in weights]
    space = FiniteSpace(weights, exact=exact)
    group = FreeAbelian(rank)
    logger.debug("random pair: rank %d, tori %s, %d points", rank, shapes, n)
    return CommutingPair(
        action_from_generators(group, space, images[:rank]),
        action_from_generators(group, space, images[rank:]),
    )


def random_skew_product(rng, *, max_side=3, exact=False):
    """
    :func:`skew_product_example` with random sides and cocycles.

    ``p, q, r`` are drawn from ``1..max_side``; ``tau`` and ``sigma`` take
    uniform values in ``ℤ_r``.
    """
    p, q, r = (int(v) for v in rng.integers(1, max_side + 1, size=3))
    tau = rng.integers(0, r, size=p)
    sigma = rng.integers(0, r, size=q)
    return skew_product_example(p, q, r, tau, sigma, exact=exact)


@functools.cache
def small_tables():
    """Finite groups of order at most 12 used by the random table pairs."""
    c = FiniteTable.cyclic
    s3 = FiniteTable.symmetric(3)
    return (
        c(2),
        c(3),
        c(4),
        c(5),
        c(6),
        s3,
        FiniteTable.direct_product(c(2), c(2)),
        FiniteTable.direct_product(c(2), c(3)),
        FiniteTable.direct_product(c(2), s3),
    )


def random_table_pair(rng, *, group=None, max_points=24, components=None, exact=False):
    """
    A random commuting pair of finite-group actions.

    The space is a disjoint union of copies of ``group`` (random from
    :func:`small_tables` if omitted), each with its own constant weight.
    On each copy ``T`` is left multiplication or trivial and ``S`` is
    right multiplication by the inverse or trivial.  Points are relabelled
    by a random permutation.
    """
    if group is None:
        choices = [g for g in small_tables() if g.order <= max_points]
        group = choices[int(rng.integers(len(choices)))]
    m = group.order
    most = max(1, min(3, max_points // m))
    components = int(rng.integers(1, most + 1)) if components is None else int(components)
    n = components * m
    relabel = rng.permutation(n)
    left = np.array([[group.compose(g, x) for x in range(m)] for g in range(m)])
    right = np.array([[group.compose(x, group.inverse(g)) for x in range(m)] for g in range(m)])
    fixed = np.tile(np.arange(m), (m, 1))
    masses = [Fraction(int(rng.integers(1, 5))) for _ in range(components)]
    total = sum(masses)
    weights = [Fraction(0)] * n
    t_images = np.empty((m, n), dtype=np.int64)
    s_images = np.empty((m, n), dtype=np.int64)
    for c, mass in enumerate(masses):
        block = relabel[c * m : (c + 1) * m]
        t_local = left if rng.random() < 0.75 else fixed
        s_local = right if rng.random() < 0.75 else fixed
        t_images[:, block] = block[t_local]
        s_images[:, block] = block[s_local]
        for x in block:
            weights[x] = mass / (total * m)
    if not exact:
        weights = [float(w) for w in weights]
    space = FiniteSpace(weights, exact=exact)
    logger.debug("random table pair: order %d, %d copies", m, components)
    return CommutingPair(
        action_from_generators(group, space, list(t_images)),
        action_from_generators(group, space, list(s_images)),
    )


def random_system(rng, *, kinds=RANDOM_KINDS, rank=None, exact=False):
    """
    A random commuting pair from one of the random families.

    ``"torus"`` is :func:`random_commuting_pair` (with ``rank``),
    ``"skew"`` is :func:`random_skew_product` and ``"table"`` is
    :func:`random_table_pair`.
    """
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "torus":
        return random_commuting_pair(rng, rank=rank, exact=exact)
    if kind == "skew":
        return random_skew_product(rng, exact=exact)
    if kind == "table":
        return random_table_pair(rng, exact=exact)
    raise ValueError(f"unknown random family {kind!r}")


def random_observable(space, rng, *, nonneg=False):
    """
    I.i.d. entries uniform on ``[-1, 1]`` (``[0, 1]`` if ``nonneg``).

    On exact spaces the entries are multiples of ``1/16``.
    """
    low = 0.0 if nonneg else -1.0
    if space.exact:
        k = RANDOM_DENOMINATOR
        numerators = rng.integers(int(low) * k, k + 1, size=space.n)
        return Observable(space, [Fraction(int(v), k) for v in numerators])
    return Observable(space, rng.uniform(low, 1.0, size=space.n))
