"""
Measure-preserving actions
==========================

An action of ``ℤ^d`` is given by the ``d`` permutations that the standard
generators act by; they must commute.  An action of a finite group is
given by one permutation per element and must be a homomorphism against
the table, ``T_{ab} = T_a ∘ T_b``.  Every permutation must preserve the
weights of the space exactly.

On functions, ``T_g f`` is ``f ∘ T_g`` (:func:`pullback`).

.. autosummary::

    ~Action
    ~CommutingPair
    ~action_from_generators
    ~identity_action
    ~composite_action
    ~apply
    ~pullback
    ~invariant_partition
    ~product_action
"""

import logging
import math

import numpy as np

from ..exceptions import DimensionError
from ..exceptions import StructureError
from ..utils.permutations import CycleIndex
from ..utils.permutations import identity
from ..utils.permutations import is_permutation
from ..utils.union_find import orbit_labels
from .groups import FiniteTable
from .spaces import Observable
from .spaces import Partition

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


class Action:
    """
    A measure-preserving action of ``group`` on ``space`` by permutations.

    PARAMETERS

    group : FreeAbelian or FiniteTable
        The acting group.
    space : FiniteSpace
        The space acted on.
    images : list of index arrays
        Generator images (``ℤ^d``) or one image per element (finite table).

    The action is immutable after construction.  :meth:`element_map`
    memoizes the maps of ``ℤ^d`` elements; worker threads asking for the
    same element may each build it, and either copy is kept.
    """

    def __init__(self, group, space, images):
        """Validate the permutations against the group law and the weights."""
        self.group = group
        self.space = space
        images = [np.asarray(p, dtype=np.int64) for p in images]
        for i, p in enumerate(images):
            if not is_permutation(p, space.n):
                raise StructureError(f"image {i} is not a permutation of {space.n} points")
            if not np.array_equal(space.weights[p], space.weights):
                raise StructureError(f"image {i} does not preserve the weights")
            p.flags.writeable = False
        self.images = tuple(images)
        if isinstance(group, FiniteTable):
            self._check_homomorphism()
        else:
            self._check_commuting()
        self._cycles = tuple(CycleIndex(p) for p in self.images)
        self._maps = {}

    def _check_commuting(self):
        if len(self.images) != self.group.rank:
            raise StructureError(
                f"ℤ^{self.group.rank} needs {self.group.rank} generator images,"
                f" got {len(self.images)}"
            )
        for i, a in enumerate(self.images):
            for j, b in enumerate(self.images[:i]):
                if not np.array_equal(a[b], b[a]):
                    raise StructureError(f"generators {j} and {i} do not commute")

    def _check_homomorphism(self):
        group = self.group
        if len(self.images) != group.order:
            raise StructureError(
                f"a group of order {group.order} needs {group.order} images,"
                f" got {len(self.images)}"
            )
        if not np.array_equal(self.images[group.identity()], identity(self.space.n)):
            raise StructureError("the identity element must act trivially")
        for a in range(group.order):
            for b in range(group.order):
                lhs = self.images[group.compose(a, b)]
                if not np.array_equal(lhs, self.images[a][self.images[b]]):
                    raise StructureError(f"not a homomorphism at ({a}, {b})")

    def __repr__(self):
        """Short description."""
        return f"Action({self.group!r}, n={self.space.n})"

    def generator_maps(self):
        """Permutations generating the image of the action."""
        return list(self.images)

    @property
    def period(self):
        """
        Least common multiple of the generator orders.

        For ``ℤ^d`` the window ``[0, period)^d`` covers the image group
        uniformly; for a finite table this is the exponent of the image.
        """
        return math.lcm(*(c.order for c in self._cycles))

    def element_map(self, g):
        """The permutation ``T_g``."""
        if isinstance(self.group, FiniteTable):
            return self.images[g]
        key = tuple(int(x) for x in g)
        if key not in self._maps:
            perm = identity(self.space.n)
            for cycles, k in zip(self._cycles, key):
                if k:
                    perm = cycles.power(k)[perm]
            perm.flags.writeable = False
            self._maps[key] = perm
        return self._maps[key]


def action_from_generators(group, sp, perms):
    """Build and validate an :class:`Action`."""
    return Action(group, sp, perms)


def identity_action(group, sp):
    """Every element acts trivially."""
    count = group.order if isinstance(group, FiniteTable) else group.rank
    return Action(group, sp, [identity(sp.n)] * count)


def composite_action(a, b):
    """
    The action ``g ↦ a_g ∘ b_g``.

    This is an action when ``a`` and ``b`` commute; it is the action along
    which the diagonal average ``ψ(S_g T_g x)`` moves.
    """
    if a.group != b.group or not a.space.compatible(b.space):
        raise DimensionError("actions differ in group or space")
    return Action(a.group, a.space, [p[q] for p, q in zip(a.images, b.images)])


def apply(a, g, x):
    """``T_g x``."""
    return int(a.element_map(g)[x])


def pullback(a, g, f):
    """``T_g f = f ∘ T_g``."""
    if not a.space.compatible(f.space):
        raise DimensionError("observable does not live on the acted space")
    return Observable(f.space, f.values[a.element_map(g)])


def invariant_partition(a):
    """
    ``I_T``: the orbit partition of the generated group.

    With strictly positive weights every invariant set is a union of
    orbits, so this partition generates the invariant sigma-algebra.
    """
    labels = orbit_labels(a.space.n, a.generator_maps())
    p = Partition(a.space, labels)
    logger.debug("invariant partition: %d orbits on %d points", p.blocks, a.space.n)
    return p


def product_action(a, b, pairs):
    """
    ``(x, y) ↦ (a_g x, b_g y)`` on the support of a pair space.

    Pass an :func:`identity_action` as ``a`` or ``b`` for ``id × S`` or
    ``T × id``.
    """
    if a.group != b.group:
        raise DimensionError("actions on a product must share the group")
    for side in (a, b):
        if not pairs.base.compatible(side.space):
            raise DimensionError("action does not live on the base of the pair space")
    images = []
    for i, (p, q) in enumerate(zip(a.generator_maps(), b.generator_maps())):
        image = pairs.index[p[pairs.left], q[pairs.right]]
        if np.any(image < 0):
            raise StructureError(f"pair-space support is not invariant under generator {i}")
        images.append(image)
    return Action(a.group, pairs.space, images)


class CommutingPair:
    """
    Two actions ``T``, ``S`` of one group on one space with
    ``T_g S_h = S_h T_g`` for all ``g, h``.
    """

    def __init__(self, T, S):
        """Verify that every generator of ``T`` commutes with every generator of ``S``."""
        if T.group != S.group:
            raise StructureError("T and S must act by the same group")
        if not T.space.compatible(S.space):
            raise StructureError("T and S must act on the same space")
        for i, p in enumerate(T.generator_maps()):
            for j, q in enumerate(S.generator_maps()):
                if not np.array_equal(p[q], q[p]):
                    raise StructureError(f"T generator {i} does not commute with S generator {j}")
        self.T = T
        self.S = S

    @property
    def group(self):
        """The acting group."""
        return self.T.group

    @property
    def space(self):
        """The space acted on."""
        return self.T.space

    def __repr__(self):
        """Short description."""
        return f"CommutingPair({self.group!r}, n={self.space.n})"
