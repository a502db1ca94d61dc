"""
Finite probability spaces
=========================

Finite spaces with strictly positive weights stand in for a standard
probability space.  A finite sigma-algebra is represented by the partition
generating it; conditional expectation, disintegration and relative
products are computed block by block.

Two scalar modes are supported.  Float spaces hold ``float64`` weights and
accept real or complex observables.  Exact spaces hold ``Fraction`` weights
in ``object`` arrays; every observable on an exact space is coerced to
``Fraction`` entries so that all block averages stay rational.

.. autosummary::

    ~FiniteSpace
    ~Observable
    ~Partition
    ~ConditionalMeasures
    ~WeightedPairSpace
    ~conditional_expectation
    ~disintegration
    ~relative_product
    ~inner_product
    ~block_sums
"""

import logging
import math
from fractions import Fraction

import numpy as np

from ..exceptions import DimensionError
from ..exceptions import StructureError

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

WEIGHT_SUM_TOLERANCE = 1e-12


def _readonly(array):
    array.flags.writeable = False
    return array


def _exact_array(values):
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = Fraction(v)
    return out


class FiniteSpace:
    """
    Points ``0..n-1`` with strictly positive weights summing to one.

    PARAMETERS

    weights : sequence
        One weight per point.  Strings such as ``"1/3"`` are accepted.
    exact : bool
        Keep weights as ``Fraction`` and require them to sum to exactly 1.
    """

    def __init__(self, weights, *, exact=False):
        """Validate and freeze the weight vector."""
        self.exact = bool(exact)
        if self.exact:
            w = _exact_array(list(weights))
            total = sum(w, Fraction(0))
            if total != 1:
                raise StructureError(f"weights sum to {total}, not 1")
        else:
            w = np.array([float(Fraction(v)) if isinstance(v, str) else float(v) for v in weights])
            total = math.fsum(w)
            if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
                raise StructureError(f"weights sum to {total!r}, not 1")
        if len(w) == 0:
            raise StructureError("a space needs at least one point")
        bad = [i for i, v in enumerate(w) if not v > 0]
        if bad:
            raise StructureError(f"weights must be strictly positive, not at {bad}")
        self.weights = _readonly(w)

    @classmethod
    def uniform(cls, n, *, exact=False):
        """Uniform weights ``1/n``."""
        if exact:
            return cls([Fraction(1, n)] * n, exact=True)
        return cls([1.0 / n] * n)

    @property
    def n(self):
        """Number of points."""
        return len(self.weights)

    def __repr__(self):
        """Short description."""
        mode = "exact" if self.exact else "float"
        return f"FiniteSpace(n={self.n}, {mode})"

    def compatible(self, other):
        """True if ``other`` is this space or an identical copy of it."""
        if self is other:
            return True
        return (
            isinstance(other, FiniteSpace)
            and self.exact == other.exact
            and self.n == other.n
            and bool(np.array_equal(self.weights, other.weights))
        )

    def coerce(self, values):
        """Scalar array of the right dtype for this space."""
        values = list(values) if not isinstance(values, np.ndarray) else values
        if len(values) != self.n:
            raise DimensionError(f"expected {self.n} values, got {len(values)}")
        if self.exact:
            return _exact_array(values)
        array = np.asarray(values)
        if np.iscomplexobj(array):
            return array.astype(complex)
        return array.astype(float)

    def zero(self):
        """Scalar zero in this space's mode."""
        return Fraction(0) if self.exact else 0.0

    def reciprocal(self, count):
        """``1/count`` in this space's mode."""
        return Fraction(1, count) if self.exact else 1.0 / count

    def integrate(self, values):
        """``Σ μ(x) values[x]``."""
        if self.exact:
            return sum((w * v for w, v in zip(self.weights, values)), Fraction(0))
        return np.dot(self.weights, values)

    def mass(self, indices):
        """Measure of a set of points, summed independently of order."""
        if self.exact:
            return sum((self.weights[i] for i in indices), Fraction(0))
        return math.fsum(self.weights[i] for i in indices)


class Observable:
    """A scalar function on the points of a :class:`FiniteSpace`."""

    def __init__(self, space, values):
        """Coerce ``values`` to the space's scalar mode."""
        self.space = space
        self.values = _readonly(space.coerce(values))

    @classmethod
    def constant(cls, space, c):
        """The constant function ``c``."""
        return cls(space, [c] * space.n)

    @classmethod
    def indicator(cls, space, points):
        """Indicator of a set of points."""
        points = set(int(p) for p in points)
        return cls(space, [1 if x in points else 0 for x in range(space.n)])

    def __len__(self):
        """Number of points."""
        return len(self.values)

    def __repr__(self):
        """Short description."""
        return f"Observable({list(self.values)!r})"

    def _other(self, other):
        if isinstance(other, Observable):
            if not self.space.compatible(other.space):
                raise DimensionError("observables live on different spaces")
            return other.values
        return other

    def __add__(self, other):
        """Pointwise sum."""
        return Observable(self.space, self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        """Pointwise difference."""
        return Observable(self.space, self.values - self._other(other))

    def __mul__(self, other):
        """Pointwise product, or scaling by a scalar."""
        return Observable(self.space, self.values * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        """Pointwise negation."""
        return Observable(self.space, -self.values)

    def conj(self):
        """Complex conjugate (identity on real and exact observables)."""
        if self.space.exact or not np.iscomplexobj(self.values):
            return self
        return Observable(self.space, np.conj(self.values))

    def integral(self):
        """``∫ f dμ``."""
        return self.space.integrate(self.values)

    def norm(self):
        """``L²(μ)`` norm, as a float."""
        return math.sqrt(abs(float(inner_product(self, self, self.space).real)))

    def spread(self):
        """Largest difference between two values."""
        vals = self.as_float().astype(complex)
        return float(np.max(np.abs(vals[:, None] - vals[None, :])))

    def is_constant(self, tolerance=0.0):
        """True if all values agree within ``tolerance``."""
        return self.spread() <= tolerance

    def as_float(self):
        """Values as a float (or complex) numpy array."""
        if self.space.exact:
            return np.array([float(v) for v in self.values])
        return np.asarray(self.values)


def _canonical_labels(labels):
    seen = {}
    out = np.empty(len(labels), dtype=np.int64)
    for i, b in enumerate(labels):
        out[i] = seen.setdefault(int(b), len(seen))
    return out, len(seen)


class Partition:
    """
    A finite sigma-algebra, given by the partition that generates it.

    Blocks are numbered ``0..k-1`` in order of first appearance, so two
    partitions are equal exactly when their ``block_of`` arrays are.
    """

    def __init__(self, space, block_of):
        """Canonicalize the block labels."""
        if len(block_of) != space.n:
            raise DimensionError(f"partition has {len(block_of)} labels for {space.n} points")
        self.space = space
        labels, self.blocks = _canonical_labels(block_of)
        self.block_of = _readonly(labels)

    @classmethod
    def discrete(cls, space):
        """All singleton blocks."""
        return cls(space, range(space.n))

    @classmethod
    def trivial(cls, space):
        """A single block."""
        return cls(space, [0] * space.n)

    @classmethod
    def from_blocks(cls, space, blocks):
        """Build from a list of point sets covering the space."""
        labels = [-1] * space.n
        for b, members in enumerate(blocks):
            for x in members:
                if labels[x] != -1:
                    raise StructureError(f"point {x} is in two blocks")
                labels[x] = b
        if -1 in labels:
            raise StructureError(f"point {labels.index(-1)} is in no block")
        return cls(space, labels)

    def __eq__(self, other):
        """Same space and same blocks."""
        return (
            isinstance(other, Partition)
            and self.space.compatible(other.space)
            and bool(np.array_equal(self.block_of, other.block_of))
        )

    def __hash__(self):
        """Hash of the block labels."""
        return hash(tuple(self.block_of.tolist()))

    def __repr__(self):
        """Blocks as lists of points."""
        return f"Partition({[m.tolist() for m in self.members()]})"

    def members(self):
        """List of point arrays, one per block."""
        order = np.argsort(self.block_of, kind="stable")
        cuts = np.cumsum(np.bincount(self.block_of, minlength=self.blocks))[:-1]
        return np.split(order, cuts)

    def block_masses(self):
        """``μ(B)`` for every block ``B``."""
        masses = [self.space.mass(m) for m in self.members()]
        if self.space.exact:
            return _exact_array(masses)
        return np.array(masses)

    def refines(self, other):
        """True if every block of ``self`` lies inside a block of ``other``."""
        if not self.space.compatible(other.space):
            raise DimensionError("partitions live on different spaces")
        return all(len(set(other.block_of[m].tolist())) == 1 for m in self.members())

    def coarsens(self, other):
        """True if ``other`` refines ``self``."""
        return other.refines(self)

    def join(self, other):
        """Finest common coarsening (intersection of the sigma-algebras)."""
        from ..utils.union_find import UnionFind

        uf = UnionFind(self.space.n)
        for p in (self, other):
            for m in p.members():
                for x in m[1:]:
                    uf.union(int(m[0]), int(x))
        return Partition(self.space, uf.labels())


def block_sums(values, labels, k, zero):
    """Sum ``values`` over the labels ``0..k-1`` (an empty label sums to ``zero``)."""
    sums = np.full(k, zero, dtype=values.dtype)
    np.add.at(sums, labels, values)
    return sums


def conditional_expectation(f, p):
    """
    ``E(f|p)``: on each block ``B``, the value ``Σ_{x∈B} μ(x)f(x) / μ(B)``.

    This is the ``L²(μ)``-orthogonal projection onto block-constant
    functions.
    """
    if not f.space.compatible(p.space):
        raise DimensionError("observable and partition live on different spaces")
    space = p.space
    weighted = space.weights * f.values
    sums = block_sums(weighted, p.block_of, p.blocks, space.zero())
    means = sums / p.block_masses()
    return Observable(space, means[p.block_of])


class ConditionalMeasures:
    """
    The disintegration ``x ↦ μ_x`` of ``μ`` over a partition.

    Row ``x`` of ``matrix`` is the normalized restriction of ``μ`` to the
    block of ``x``.
    """

    def __init__(self, partition, matrix):
        """Hold the per-point conditional measures."""
        self.partition = partition
        self.matrix = _readonly(matrix)

    def measure(self, x):
        """``μ_x`` as a weight vector."""
        return self.matrix[x]

    def integrate(self, f):
        """``x ↦ ∫ f dμ_x``, which is ``E(f|partition)``."""
        return Observable(self.partition.space, self.matrix.dot(f.values))

    def reconstitute(self, f):
        """``∫∫ f dμ_x dμ(x)``, equal to ``∫ f dμ``."""
        return self.integrate(f).integral()


def disintegration(sp, p):
    """Conditional measures of ``sp`` over the partition ``p``."""
    if not sp.compatible(p.space):
        raise DimensionError("partition does not live on this space")
    masses = p.block_masses()
    n = sp.n
    if sp.exact:
        matrix = np.full((n, n), Fraction(0), dtype=object)
    else:
        matrix = np.zeros((n, n))
    for b, members in enumerate(p.members()):
        for x in members:
            for z in members:
                matrix[x, z] = sp.weights[z] / masses[b]
    return ConditionalMeasures(p, matrix)


class WeightedPairSpace:
    """
    A probability measure on ``X × X`` given by its support.

    ``left[i], right[i]`` is the ``i``-th support pair and ``weights[i]``
    its mass.  ``index[w, z]`` is the position of ``(w, z)`` in the support,
    or ``-1``.
    """

    def __init__(self, base, left, right, weights):
        """Validate the pair weights through :class:`FiniteSpace`."""
        self.base = base
        self.left = _readonly(np.asarray(left, dtype=np.int64))
        self.right = _readonly(np.asarray(right, dtype=np.int64))
        self.space = FiniteSpace(weights, exact=base.exact)
        self.weights = self.space.weights
        index = np.full((base.n, base.n), -1, dtype=np.int64)
        index[self.left, self.right] = np.arange(len(self.left))
        self.index = _readonly(index)

    def __len__(self):
        """Number of support pairs."""
        return len(self.left)

    def pairs(self):
        """Support pairs as tuples."""
        return list(zip(self.left.tolist(), self.right.tolist()))

    def as_space(self):
        """The support as a :class:`FiniteSpace`."""
        return self.space

    def tensor(self, f, g):
        """``f ⊗ g`` restricted to the support."""
        for h in (f, g):
            if not self.base.compatible(h.space):
                raise DimensionError("observable does not live on the base space")
        return Observable(self.space, f.values[self.left] * g.values[self.right])

    def marginals(self):
        """The two marginal weight vectors on the base space."""
        zero = self.base.zero()
        left = block_sums(self.weights, self.left, self.base.n, zero)
        right = block_sums(self.weights, self.right, self.base.n, zero)
        return left, right


def relative_product(sp, p):
    """
    ``μ ×_p μ``: the pair ``(w, z)`` in a common block ``B`` has mass
    ``μ(w)μ(z)/μ(B)``; pairs in different blocks have mass zero.
    """
    if not sp.compatible(p.space):
        raise DimensionError("partition does not live on this space")
    masses = p.block_masses()
    members = p.members()
    left, right, weights = [], [], []
    for w in range(sp.n):
        b = p.block_of[w]
        for z in members[b]:
            left.append(w)
            right.append(int(z))
            weights.append(sp.weights[w] * sp.weights[z] / masses[b])
    logger.debug("relative product over %d blocks: %d pairs", p.blocks, len(left))
    return WeightedPairSpace(sp, left, right, weights)


def inner_product(f, g, sp):
    """``Σ μ(x) f(x) conj(g(x))``."""
    for h in (f, g):
        if not sp.compatible(h.space):
            raise DimensionError("observable does not live on this space")
    if sp.exact:
        return sp.integrate(f.values * g.values)
    return np.dot(sp.weights, f.values * np.conj(g.values))
