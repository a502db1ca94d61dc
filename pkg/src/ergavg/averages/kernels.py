"""
Invariant kernels over a relative product
=========================================

Both limit formulas and the characteristic subspaces are built from the
same object: the relative product ``μ ×_{I_R} μ`` over the invariant
partition of one action ``R``, the orbits of the other action ``Q``
acting diagonally on it, and the conditional expectation of a tensor onto
those orbits.  A :class:`KernelSpace` caches that structure so repeated
evaluations (witness searches, random batteries) only do array work.

.. autosummary::

    ~KernelSpace
"""

import logging

import numpy as np

from ..exceptions import DimensionError
from ..systems.actions import invariant_partition
from ..systems.actions import product_action
from ..systems.spaces import Observable
from ..systems.spaces import block_sums
from ..systems.spaces import relative_product

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


class KernelSpace:
    """
    ``Q × Q`` orbits on the relative product over ``I_R``.

    PARAMETERS

    outer : Action
        ``R``; its invariant partition defines the relative product.
    inner : Action
        ``Q``; acts diagonally on the relative product.  ``I_R`` must be
        ``Q``-invariant, which holds when ``Q`` and ``R`` commute.
    """

    def __init__(self, outer, inner):
        """Compute the partition, the relative product and the orbits."""
        self.space = outer.space
        self.partition = invariant_partition(outer)
        self.pairs = relative_product(self.space, self.partition)
        self.orbits = invariant_partition(product_action(inner, inner, self.pairs))
        self.orbit_masses = self.orbits.block_masses()
        masses = self.partition.block_masses()
        pairs = self.pairs
        # μ_{π(w)}(z) for every support pair (w, z)
        owner = self.partition.block_of[pairs.left]
        self.conditional = self.space.weights[pairs.right] / masses[owner]
        logger.debug(
            "kernel space: %d blocks, %d pairs, %d diagonal orbits",
            self.partition.blocks,
            len(pairs),
            self.orbits.blocks,
        )

    def _check(self, *functions):
        for f in functions:
            if not self.space.compatible(f.space):
                raise DimensionError("observable does not live on the system's space")

    def project(self, fa, fb):
        """``E(fa ⊗ fb | Q × Q)`` as values on the support pairs."""
        self._check(fa, fb)
        pairs = self.pairs
        labels = self.orbits.block_of
        weighted = pairs.weights * (fa.values[pairs.left] * fb.values[pairs.right])
        sums = block_sums(weighted, labels, self.orbits.blocks, self.space.zero())
        return (sums / self.orbit_masses)[labels]

    def integrate(self, kernel, f):
        """``x ↦ ∫ f(z) kernel(x, z) dμ_{π(x)}(z)``."""
        self._check(f)
        pairs = self.pairs
        contributions = f.values[pairs.right] * kernel * self.conditional
        return Observable(
            self.space,
            block_sums(contributions, pairs.left, self.space.n, self.space.zero()),
        )

    def limit(self, fa, fb, fc):
        """``∫ fc(z) E(fa ⊗ fb | Q × Q)(x, z) dμ_{π(x)}(z)``."""
        return self.integrate(self.project(fa, fb), fc)

    def sections(self):
        """
        Distinct sets ``{w : (w, z) ∈ O}`` over orbits ``O`` and points ``z``.

        These indicators span ``{∫ H(·, z) φ(z) dμ_{π(·)}(z)}`` as ``H``
        ranges over invariant kernels and ``φ`` over observables.
        """
        pairs = self.pairs
        keys = self.orbits.block_of * self.space.n + pairs.right
        order = np.argsort(keys, kind="stable")
        cuts = np.flatnonzero(np.diff(keys[order])) + 1
        seen = {}
        for group in np.split(order, cuts):
            members = tuple(sorted(pairs.left[group].tolist()))
            seen.setdefault(members, None)
        return list(seen)
