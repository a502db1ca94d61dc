"""
The triple measure λ
====================

``λ = ∫ μ_{σ(x)} × μ_{τ(x)} × δ_x dμ(x)`` on ``X³``, where ``σ`` and ``τ``
are the factor maps to ``I_S`` and ``I_T``.  It is invariant under
``T × id × T`` and ``id × S × S``, and

    ``∫ f1 ⊗ f2 ⊗ f3 dλ = ∫ E(f1|I_S) E(f2|I_T) f3 dμ``.

.. autosummary::

    ~TripleMeasure
    ~lambda_measure
"""

import logging
import math
from fractions import Fraction

import numpy as np

from ..exceptions import DimensionError
from ..systems.actions import invariant_partition
from ..utils.permutations import identity

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


class TripleMeasure:
    """
    A measure on ``X³`` given by its support ``(z1[i], z2[i], x[i])`` and
    weights.
    """

    def __init__(self, base, z1, z2, x, weights):
        """Hold the support arrays."""
        self.base = base
        self.z1 = np.asarray(z1, dtype=np.int64)
        self.z2 = np.asarray(z2, dtype=np.int64)
        self.x = np.asarray(x, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=object if base.exact else float)

    def __len__(self):
        """Support size."""
        return len(self.weights)

    def as_dict(self):
        """``{(z1, z2, x): weight}``."""
        return {
            (a, b, c): w
            for a, b, c, w in zip(self.z1.tolist(), self.z2.tolist(), self.x.tolist(), self.weights.tolist())
        }

    def __eq__(self, other):
        """Same support with exactly the same weights."""
        return isinstance(other, TripleMeasure) and self.as_dict() == other.as_dict()

    def total(self):
        """Total mass."""
        if self.base.exact:
            return sum(self.weights.tolist(), Fraction(0))
        return math.fsum(self.weights.tolist())

    def pushforward(self, p1=None, p2=None, p3=None):
        """Image under ``p1 × p2 × p3`` (``None`` is the identity)."""
        n = self.base.n
        p1, p2, p3 = (identity(n) if p is None else np.asarray(p) for p in (p1, p2, p3))
        return TripleMeasure(self.base, p1[self.z1], p2[self.z2], p3[self.x], self.weights)

    def integrate(self, f1, f2, f3):
        """``∫ f1 ⊗ f2 ⊗ f3 dλ``."""
        for f in (f1, f2, f3):
            if not self.base.compatible(f.space):
                raise DimensionError("observable does not live on the base space")
        terms = self.weights * f1.values[self.z1] * f2.values[self.z2] * f3.values[self.x]
        return terms.sum()

    def fiber(self, x):
        """``λ_x`` as ``{(z1, z2): weight}``, normalized to a probability."""
        mask = self.x == x
        mass = self.base.weights[x]
        return {
            (int(a), int(b)): w / mass for a, b, w in zip(self.z1[mask], self.z2[mask], self.weights[mask])
        }


def lambda_measure(pair):
    """
    Build ``λ`` for a commuting pair.

    The triple ``(z1, z2, x)`` carries ``μ_{σ(x)}(z1)·μ_{τ(x)}(z2)·μ(x)``.
    """
    space = pair.space
    i_s = invariant_partition(pair.S)
    i_t = invariant_partition(pair.T)
    s_blocks, t_blocks = i_s.members(), i_t.members()
    s_mass, t_mass = i_s.block_masses(), i_t.block_masses()
    w = space.weights
    z1, z2, xs, weights = [], [], [], []
    for x in range(space.n):
        bs, bt = i_s.block_of[x], i_t.block_of[x]
        for a in s_blocks[bs]:
            first = w[a] / s_mass[bs]
            for b in t_blocks[bt]:
                z1.append(int(a))
                z2.append(int(b))
                xs.append(x)
                weights.append(first * (w[b] / t_mass[bt]) * w[x])
    logger.debug("lambda measure: %d triples", len(weights))
    return TripleMeasure(space, z1, z2, xs, weights)
