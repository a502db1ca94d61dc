"""
Monochromatic parallelepipeds
=============================

For a coloring of the cube ``[0, N)³`` find a color ``i``, a base ``a``
and shifts ``g, h, k ≥ 1`` such that all eight points ``a + εg·e1 + εh·e2
+ εk·e3`` (``ε ∈ {0, 1}``) lie in the window and have color ``i``.

The scan order is lexicographic in ``(g, h, k, a)``, so the first hit is
reproducible.

.. autosummary::

    ~Coloring3
    ~Parallelepiped
    ~parallelepiped_search
    ~verify_parallelepiped
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import StructureError
from ..utils.parallel import ordered_map

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


class Coloring3:
    """A coloring of ``[0, N)³`` by ``1..r``."""

    def __init__(self, colors):
        """Validate the color cube."""
        colors = np.array(colors, dtype=np.int64)
        if colors.ndim != 3 or len(set(colors.shape)) != 1:
            raise StructureError(f"a coloring is an N×N×N cube, not {colors.shape}")
        if colors.size and colors.min() < 1:
            raise StructureError("colors are numbered from 1")
        colors.flags.writeable = False
        self.colors = colors

    @classmethod
    def constant(cls, N, color=1):
        """Every cell the same color."""
        return cls(np.full((N, N, N), color, dtype=np.int64))

    @classmethod
    def parity(cls, N):
        """Eight colors by the parity vector ``(x mod 2, y mod 2, z mod 2)``."""
        x, y, z = np.indices((N, N, N))
        return cls(1 + x % 2 + 2 * (y % 2) + 4 * (z % 2))

    @classmethod
    def random(cls, N, r, rng):
        """Independent uniform colors."""
        return cls(rng.integers(1, r + 1, size=(N, N, N)))

    @property
    def size(self):
        """``N``."""
        return self.colors.shape[0]

    @property
    def color_count(self):
        """Largest color used (``r``)."""
        return int(self.colors.max()) if self.colors.size else 0

    def __eq__(self, other):
        """Same cube."""
        return isinstance(other, Coloring3) and bool(np.array_equal(self.colors, other.colors))


@dataclass(frozen=True)
class Parallelepiped:
    """A hit of :func:`parallelepiped_search`."""

    color: int
    base: tuple
    shifts: tuple


def _corners(a, shifts):
    for eps in itertools.product((0, 1), repeat=3):
        yield tuple(a[i] + eps[i] * shifts[i] for i in range(3))


def verify_parallelepiped(c, i, a, shifts):
    """True iff all eight corners are in the window and colored ``i``."""
    N = c.size
    for point in _corners(a, shifts):
        if not all(0 <= v < N for v in point):
            return False
        if c.colors[point] != i:
            return False
    return True


def _first_for_g(colors, g, h_range, k_range):
    N = colors.shape[0]
    for h in h_range:
        for k in k_range:
            if g >= N or h >= N or k >= N:
                continue
            base = colors[: N - g, : N - h, : N - k]
            mask = np.ones(base.shape, dtype=bool)
            for dg, dh, dk in itertools.product((0, g), (0, h), (0, k)):
                mask &= colors[dg : dg + N - g, dh : dh + N - h, dk : dk + N - k] == base
            hits = np.argwhere(mask)
            if len(hits):
                a = tuple(int(v) for v in hits[0])
                return Parallelepiped(int(colors[a]), a, (g, h, k))
    return None


def parallelepiped_search(c, shift_range=None, *, workers=None):
    """
    First monochromatic parallelepiped, or ``None``.

    ``shift_range`` is ``((g0, g1), (h0, h1), (k0, k1))``, half-open, with
    all shifts ``≥ 1``; the default covers every shift that fits.  Each
    ``g`` is one chunk; the earliest ``g`` with a hit wins.
    """
    N = c.size
    if shift_range is None:
        shift_range = ((1, N),) * 3
    (g0, g1), (h0, h1), (k0, k1) = shift_range
    if min(g0, h0, k0) < 1:
        raise StructureError("parallelepiped shifts must be positive")
    h_range, k_range = range(h0, h1), range(k0, k1)
    results = ordered_map(lambda g: _first_for_g(c.colors, g, h_range, k_range), range(g0, g1), workers)
    for hit in results:
        if hit is not None:
            logger.debug("parallelepiped %s", hit)
            return hit
    logger.debug("no monochromatic parallelepiped in N=%d, shifts %s", N, shift_range)
    return None
