"""
Recurrence sets
===============

For a set ``A`` of positive measure the shifts ``(g, h)`` with

    ``μ(A ∩ T_g⁻¹A ∩ S_h⁻¹(A ∩ T_g⁻¹A)) > μ(A)⁴ − ε``

form a syndetic set, and the return times ``{g : μ(A ∩ T_g⁻¹A) > 0}`` of
a single action are syndetic as well.  Both are computed over a finite
range of shifts in ``ℤ`` (so the pair set lives in ``ℤ²`` and can be fed
to :func:`~ergavg.combinatorics.grids.syndeticity_estimate`).

.. autosummary::

    ~recurrence_set
    ~return_times
"""

import logging

import numpy as np

from ..combinatorics.grids import GridSet
from ..exceptions import EmptyWindowError
from ..exceptions import StructureError
from ..systems.groups import FreeAbelian
from ..systems.spaces import Observable

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


def _indicator(space, A):
    if isinstance(A, Observable):
        return A.as_float() != 0
    mask = np.zeros(space.n, dtype=bool)
    mask[list(A)] = True
    return mask


def _require_z(group):
    if group != FreeAbelian(1):
        raise StructureError("recurrence sets are computed for ℤ actions")


def recurrence_set(pair, A, epsilon, shift_range):
    """
    Shifts ``(g, h)`` in ``shift_range = ((g0, g1), (h0, h1))`` whose
    four-fold return has measure above ``μ(A)⁴ − ε``.
    """
    _require_z(pair.group)
    (g0, g1), (h0, h1) = shift_range
    if g1 <= g0 or h1 <= h0:
        raise EmptyWindowError(f"shift range {shift_range} is empty")
    space = pair.space
    a = _indicator(space, A)
    weights = np.array([float(w) for w in space.weights])
    threshold = float(weights[a].sum()) ** 4 - epsilon
    bits = np.zeros((g1 - g0, h1 - h0), dtype=bool)
    for i, g in enumerate(range(g0, g1)):
        t_map = pair.T.element_map((g,))
        both = a & a[t_map]
        for j, h in enumerate(range(h0, h1)):
            s_map = pair.S.element_map((h,))
            bits[i, j] = weights[both & both[s_map]].sum() > threshold
    logger.debug("recurrence set: %d of %d shifts", int(bits.sum()), bits.size)
    return GridSet(bits, (g0, h0))


def return_times(a, A, shift_range):
    """Shifts ``g`` in ``shift_range = (g0, g1)`` with ``μ(A ∩ T_g⁻¹A) > 0``."""
    _require_z(a.group)
    g0, g1 = shift_range
    mask = _indicator(a.space, A)
    return [g for g in range(g0, g1) if np.any(mask & mask[a.element_map((g,))])]
