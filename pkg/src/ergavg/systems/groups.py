"""
Amenable groups and Følner sequences
====================================

Two concrete amenable groups are supported: the free abelian group ``ℤ^d``
(elements are integer ``d``-tuples) and finite groups given by their full
multiplication table (elements are indices).  Both come with canonical
two-sided Følner sequences: boxes for ``ℤ^d`` and the constant full-group
sequence for finite groups.

.. autosummary::

    ~FreeAbelian
    ~FiniteTable
    ~FolnerSequence
    ~folner_defect
"""

import itertools
import logging
import math
import numbers
from dataclasses import dataclass

from ..exceptions import EmptyWindowError
from ..exceptions import StructureError

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


def _integral(value):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise StructureError(f"expected an integer, got {value!r}")
    return int(value)


def _box_ends(ends, key):
    if not isinstance(ends, (list, tuple)):
        raise StructureError(f"{key} must be a list of (offset, slope) pairs")
    pairs = []
    for end in ends:
        if not isinstance(end, (list, tuple)) or len(end) != 2:
            raise StructureError(f"each {key} end is an (offset, slope) pair, not {end!r}")
        pairs.append((_integral(end[0]), _integral(end[1])))
    return tuple(pairs)


@dataclass(frozen=True)
class FreeAbelian:
    """The group ``ℤ^rank`` under addition."""

    rank: int = 1

    def __post_init__(self):
        """Rank must be positive."""
        if self.rank < 1:
            raise StructureError(f"rank must be >= 1, not {self.rank}")

    kind = "free_abelian"

    def identity(self):
        """The zero vector."""
        return (0,) * self.rank

    def compose(self, a, b):
        """``a + b``."""
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a):
        """``-a``."""
        return tuple(-x for x in a)

    def contains(self, g):
        """True for integer tuples of the right length."""
        return (
            isinstance(g, tuple)
            and len(g) == self.rank
            and all(isinstance(x, numbers.Integral) for x in g)
        )

    def generators(self):
        """Standard basis vectors."""
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def to_dict(self):
        """System-file description."""
        return {"kind": self.kind, "rank": self.rank}


@dataclass(frozen=True)
class FiniteTable:
    """
    A finite group given by its multiplication table.

    ``table[a][b]`` is the index of ``a·b``.  Group axioms are checked on
    construction.
    """

    table: tuple
    identity_index: int
    inverse_table: tuple

    kind = "finite_table"

    def __post_init__(self):
        """Check closure, identity, inverses and associativity."""
        m = len(self.table)
        if m == 0 or any(len(row) != m for row in self.table):
            raise StructureError("multiplication table must be square and nonempty")
        if any(not 0 <= v < m for row in self.table for v in row):
            raise StructureError("multiplication table has entries out of range")
        e = self.identity_index
        if not 0 <= e < m:
            raise StructureError(f"identity index {e} out of range")
        for a in range(m):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise StructureError(f"{e} is not an identity for {a}")
            if self.table[a][self.inverse_table[a]] != e:
                raise StructureError(f"{self.inverse_table[a]} is not an inverse of {a}")
        for a, b, c in itertools.product(range(m), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise StructureError(f"table is not associative at {(a, b, c)}")

    @classmethod
    def from_table(cls, table):
        """Deduce identity and inverses from a bare table."""
        table = tuple(tuple(_integral(v) for v in row) for row in table)
        m = len(table)
        if m == 0 or any(len(row) != m for row in table):
            raise StructureError("multiplication table must be square and nonempty")
        ids = [e for e in range(m) if table[e] == tuple(range(m))]
        if not ids:
            raise StructureError("multiplication table has no identity row")
        e = ids[0]
        inverse = []
        for a in range(m):
            candidates = [b for b in range(m) if table[a][b] == e]
            if not candidates:
                raise StructureError(f"element {a} has no inverse")
            inverse.append(candidates[0])
        return cls(table, e, tuple(inverse))

    @classmethod
    def cyclic(cls, m):
        """``ℤ/mℤ``."""
        return cls.from_table([[(a + b) % m for b in range(m)] for a in range(m)])

    @classmethod
    def symmetric(cls, k):
        """The symmetric group on ``k`` letters, composition ``(a·b)(i) = a(b(i))``."""
        elements = list(itertools.permutations(range(k)))
        position = {p: i for i, p in enumerate(elements)}
        table = [
            [position[tuple(a[b[i]] for i in range(k))] for b in elements]
            for a in elements
        ]
        return cls.from_table(table)

    @classmethod
    def direct_product(cls, first, second):
        """``first × second``; element ``(a, b)`` has index ``a·|second| + b``."""
        sizes = first.order, second.order
        table = [
            [
                first.table[a1][b1] * sizes[1] + second.table[a2][b2]
                for b1 in range(sizes[0])
                for b2 in range(sizes[1])
            ]
            for a1 in range(sizes[0])
            for a2 in range(sizes[1])
        ]
        return cls.from_table(table)

    @property
    def order(self):
        """Number of elements."""
        return len(self.table)

    def identity(self):
        """Index of the identity."""
        return self.identity_index

    def compose(self, a, b):
        """``a·b``."""
        return self.table[a][b]

    def inverse(self, a):
        """``a⁻¹``."""
        return self.inverse_table[a]

    def contains(self, g):
        """True for valid element indices."""
        return isinstance(g, numbers.Integral) and 0 <= g < self.order

    def generators(self):
        """Every element (the table carries no smaller generating set)."""
        return list(range(self.order))

    def is_abelian(self):
        """True if the table is symmetric."""
        m = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(m) for b in range(m))

    def to_dict(self):
        """System-file description."""
        return {
            "kind": self.kind,
            "table": [list(row) for row in self.table],
            "identity": self.identity_index,
            "inverse": list(self.inverse_table),
        }


@dataclass(frozen=True)
class FolnerSequence:
    """
    A two-sided Følner sequence.

    For ``ℤ^d`` the stage-``n`` window is the box
    ``Π_i [M_i(n), N_i(n))`` with affine ends ``M_i(n) = a_i + b_i·n`` and
    ``N_i(n) = c_i + d_i·n`` given as ``lower[i] = (a_i, b_i)`` and
    ``upper[i] = (c_i, d_i)``; ``d_i > b_i`` so every side grows without
    bound.  For a finite group every stage is the whole group and
    ``lower``/``upper`` are empty.
    """

    group: object
    lower: tuple = ()
    upper: tuple = ()

    def __post_init__(self):
        """Check the schedule against the group."""
        if isinstance(self.group, FiniteTable):
            if self.lower or self.upper:
                raise StructureError("finite groups use the constant full-group sequence")
            return
        d = self.group.rank
        if len(self.lower) != d or len(self.upper) != d:
            raise StructureError(f"box schedule needs {d} lower and upper ends")
        for i, ((a, b), (c, e)) in enumerate(zip(self.lower, self.upper)):
            if e <= b:
                raise StructureError(f"side {i} of the box does not grow: N-M slope {e - b}")

    @classmethod
    def symmetric(cls, group):
        """``[-n, n]^d`` (the default); the whole group when finite."""
        if isinstance(group, FiniteTable):
            return cls(group)
        return cls(group, ((0, -1),) * group.rank, ((1, 1),) * group.rank)

    @classmethod
    def initial(cls, group):
        """``[0, n)^d``."""
        if isinstance(group, FiniteTable):
            return cls(group)
        return cls(group, ((0, 0),) * group.rank, ((0, 1),) * group.rank)

    @classmethod
    def full_period(cls, group, period, offset=None):
        """``Π_i [t_i, t_i + period·n)``: stage ``n`` covers ``n`` full periods."""
        if isinstance(group, FiniteTable):
            return cls(group)
        offset = offset or (0,) * group.rank
        return cls(
            group,
            tuple((t, 0) for t in offset),
            tuple((t, period) for t in offset),
        )

    @classmethod
    def from_dict(cls, group, entry):
        """Build from a system-file description."""
        if isinstance(group, FiniteTable):
            return cls(group)
        if not isinstance(entry, dict):
            raise StructureError("a box schedule is an object with 'lower' and 'upper' ends")
        return cls(group, *(_box_ends(entry.get(key, ()), key) for key in ("lower", "upper")))

    def to_dict(self):
        """System-file description."""
        return {
            "lower": [list(end) for end in self.lower],
            "upper": [list(end) for end in self.upper],
        }

    def bounds(self, n):
        """``(M(n), N(n))`` as tuples (empty for finite groups)."""
        lo = tuple(a + b * n for a, b in self.lower)
        hi = tuple(c + d * n for c, d in self.upper)
        return lo, hi

    def size(self, n):
        """``|Φ_n|``."""
        if isinstance(self.group, FiniteTable):
            return self.group.order
        lo, hi = self.bounds(n)
        return math.prod(max(0, h - l) for l, h in zip(lo, hi))

    def window(self, n):
        """Elements of ``Φ_n`` in lexicographic order."""
        if isinstance(self.group, FiniteTable):
            return list(range(self.group.order))
        lo, hi = self.bounds(n)
        if any(h <= l for l, h in zip(lo, hi)):
            raise EmptyWindowError(f"Følner window at stage {n} is empty: {lo}..{hi}")
        return list(itertools.product(*(range(l, h) for l, h in zip(lo, hi))))

    def translate(self, g):
        """The left translate ``gΦ``."""
        if isinstance(self.group, FiniteTable):
            return self
        return FolnerSequence(
            self.group,
            tuple((a + t, b) for (a, b), t in zip(self.lower, g)),
            tuple((c + t, d) for (c, d), t in zip(self.upper, g)),
        )

    def right_translate(self, g):
        """The right translate ``Φg`` (equal to ``gΦ`` in ``ℤ^d``)."""
        return self.translate(g)


def folner_defect(seq, g, n):
    """``(|Φ_n ∩ gΦ_n|/|Φ_n|, |Φ_n ∩ Φ_n g|/|Φ_n|)``."""
    group = seq.group
    if isinstance(group, FiniteTable):
        window = set(seq.window(n))
        left = {group.compose(g, x) for x in window}
        right = {group.compose(x, g) for x in window}
        size = len(window)
        return len(window & left) / size, len(window & right) / size
    lo, hi = seq.bounds(n)
    sides = [h - l for l, h in zip(lo, hi)]
    if any(s <= 0 for s in sides):
        raise EmptyWindowError(f"Følner window at stage {n} is empty")
    overlap = math.prod(max(0, s - abs(t)) for s, t in zip(sides, g))
    ratio = overlap / math.prod(sides)
    return ratio, ratio
