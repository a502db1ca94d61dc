"""
Van der Corput diagnostic
=========================

The double-averaged correlation functional

    ``(1/|Φ_m|²|Ψ_m|²) Σ_{j,j'∈Φ_m, k,k'∈Ψ_m} (1/|Φ_n||Ψ_n|) Σ_{g∈Φ_n, h∈Ψ_n}
    ⟨u_{j'g, k'h}, u_{jg, kh}⟩``

for a bounded family ``(g, h) ↦ u_{g,h}``.  No limit is asserted.

.. autosummary::

    ~vdc_double_average
"""

import functools
import logging

from ..systems.spaces import inner_product

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


def _key(g):
    return tuple(g) if isinstance(g, (tuple, list)) else g


def vdc_double_average(family, phi, psi, n, m):
    """
    Evaluate the functional for ``family`` (a callable ``(g, h) → Observable``).

    Family members are cached, so each ``u_{g,h}`` is computed once.
    """
    group = phi.group
    outer_g, outer_h = phi.window(m), psi.window(m)
    inner_g, inner_h = phi.window(n), psi.window(n)

    @functools.cache
    def member(g, h):
        return family(g, h)

    total = 0
    for g in inner_g:
        for h in inner_h:
            for j in outer_g:
                for k in outer_h:
                    u = member(_key(group.compose(j, g)), _key(group.compose(k, h)))
                    for j2 in outer_g:
                        for k2 in outer_h:
                            v = member(_key(group.compose(j2, g)), _key(group.compose(k2, h)))
                            total += inner_product(v, u, u.space)
    count = (len(outer_g) * len(outer_h)) ** 2 * len(inner_g) * len(inner_h)
    value = total / count
    logger.debug("vdc functional n=%d m=%d: %s", n, m, value)
    return value
