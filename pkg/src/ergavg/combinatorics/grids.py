"""
Grid sets and density scanners
==============================

Finite-window surrogates for densities in ``ℤ²``.  A :class:`GridSet` is a
bit grid over the window ``[o1, o1+W1) × [o2, o2+W2)``; boxes are given in
absolute coordinates as ``((x0, x1), (y0, y1))``, half-open.

Right translates ``E(g, 0)`` are realized additively: ``a`` lies in
``E − (g, 0)`` exactly when ``a + (g, 0)`` lies in ``E``.

.. autosummary::

    ~GridSet
    ~window_density
    ~intersection_density_scan
    ~good_pair_set
    ~syndeticity_estimate
"""

import logging

import numpy as np

from ..exceptions import EmptyWindowError
from ..exceptions import WindowError
from ..utils.parallel import ordered_map

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


class GridSet:
    """
    A subset of a finite window in ``ℤ²``.

    PARAMETERS

    bits : 2-D array of bool
        Membership; ``bits[i, j]`` is the point ``origin + (i, j)``.
    origin : (int, int)
        Lower corner of the window.
    """

    def __init__(self, bits, origin=(0, 0)):
        """Freeze the membership grid."""
        bits = np.array(bits, dtype=bool)
        if bits.ndim != 2:
            raise WindowError(f"grid sets are 2-D, not {bits.ndim}-D")
        bits.flags.writeable = False
        self.bits = bits
        self.origin = (int(origin[0]), int(origin[1]))

    @classmethod
    def full(cls, shape, origin=(0, 0)):
        """Every point of the window."""
        return cls(np.ones(shape, dtype=bool), origin)

    @classmethod
    def empty(cls, shape, origin=(0, 0)):
        """No point of the window."""
        return cls(np.zeros(shape, dtype=bool), origin)

    @classmethod
    def lattice(cls, shape, p, q, offset=(0, 0), origin=(0, 0)):
        """Points ``(x, y)`` with ``x ≡ offset[0] (mod p)`` and ``y ≡ offset[1] (mod q)``."""
        x = np.arange(origin[0], origin[0] + shape[0])
        y = np.arange(origin[1], origin[1] + shape[1])
        bits = ((x[:, None] - offset[0]) % p == 0) & ((y[None, :] - offset[1]) % q == 0)
        return cls(bits, origin)

    @classmethod
    def from_points(cls, shape, points, origin=(0, 0)):
        """Mark the listed absolute points."""
        bits = np.zeros(shape, dtype=bool)
        for x, y in points:
            bits[x - origin[0], y - origin[1]] = True
        return cls(bits, origin)

    @property
    def shape(self):
        """``(W1, W2)``."""
        return self.bits.shape

    @property
    def window(self):
        """The window as a box."""
        (o1, o2), (w1, w2) = self.origin, self.shape
        return ((o1, o1 + w1), (o2, o2 + w2))

    def __eq__(self, other):
        """Same window and same points."""
        return (
            isinstance(other, GridSet)
            and self.origin == other.origin
            and bool(np.array_equal(self.bits, other.bits))
        )

    def __repr__(self):
        """Window and count."""
        return f"GridSet(window={self.window}, points={int(self.bits.sum())})"

    def points(self):
        """Members as absolute ``(x, y)`` tuples in lexicographic order."""
        return [(int(i) + self.origin[0], int(j) + self.origin[1]) for i, j in np.argwhere(self.bits)]

    def contains(self, point):
        """Membership of an absolute point (false outside the window)."""
        i, j = point[0] - self.origin[0], point[1] - self.origin[1]
        return 0 <= i < self.shape[0] and 0 <= j < self.shape[1] and bool(self.bits[i, j])

    def view(self, box, shift=(0, 0)):
        """Membership over ``box + shift``; :class:`WindowError` if it escapes."""
        (x0, x1), (y0, y1) = box
        if x1 <= x0 or y1 <= y0:
            raise EmptyWindowError(f"box {box} is empty")
        i0 = x0 + shift[0] - self.origin[0]
        j0 = y0 + shift[1] - self.origin[1]
        i1, j1 = i0 + (x1 - x0), j0 + (y1 - y0)
        if i0 < 0 or j0 < 0 or i1 > self.shape[0] or j1 > self.shape[1]:
            raise WindowError(f"box {box} shifted by {tuple(shift)} escapes the window {self.window}")
        return self.bits[i0:i1, j0:j1]


def _box_size(box):
    (x0, x1), (y0, y1) = box
    return (x1 - x0) * (y1 - y0)


def window_density(E, sub):
    """``|E ∩ sub| / |sub|``."""
    return int(E.view(sub).sum()) / _box_size(sub)


def _four_fold(E, g, h, sub):
    mask = E.view(sub) & E.view(sub, (g, 0)) & E.view(sub, (0, h)) & E.view(sub, (g, h))
    return int(mask.sum())


def intersection_density_scan(E, shift, sub):
    """Density over ``sub`` of ``E ∩ (E − (g,0)) ∩ (E − (0,h)) ∩ (E − (g,h))``."""
    g, h = shift
    return _four_fold(E, g, h, sub) / _box_size(sub)


def good_pair_set(E, epsilon, sub, shift_range, *, workers=None):
    """
    Shifts ``(g, h)`` in ``shift_range`` whose four-fold intersection has
    density greater than ``δ⁴ − ε``, with ``δ = window_density(E, sub)``.

    Returns a :class:`GridSet` whose window is ``shift_range``.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, not {epsilon}")
    delta = window_density(E, sub)
    if delta == 0:
        logger.warning("empty set: the bound δ⁴ − ε is vacuous")
    threshold = delta**4 - epsilon
    size = _box_size(sub)
    (g0, g1), (h0, h1) = shift_range
    if g1 <= g0 or h1 <= h0:
        raise EmptyWindowError(f"shift range {shift_range} is empty")

    def row(g):
        return [_four_fold(E, g, h, sub) / size > threshold for h in range(h0, h1)]

    bits = ordered_map(row, range(g0, g1), workers)
    good = GridSet(bits, (g0, h0))
    logger.debug("good pairs: %d of %d (delta %.4f)", int(good.bits.sum()), good.bits.size, delta)
    return good


def _squares_all_hit(prefix, L):
    hits = prefix[L:, L:] - prefix[:-L, L:] - prefix[L:, :-L] + prefix[:-L, :-L]
    return bool(np.all(hits > 0))


def syndeticity_estimate(S):
    """
    Smallest ``L`` such that every ``L × L`` square inside the window meets
    ``S``, or ``None`` if no ``L`` up to the shorter window side works.

    Uses 2-D prefix sums; the property is monotone in ``L``, so the
    smallest ``L`` is found by bisection.
    """
    w1, w2 = S.shape
    limit = min(w1, w2)
    if limit == 0:
        return None
    prefix = np.zeros((w1 + 1, w2 + 1), dtype=np.int64)
    prefix[1:, 1:] = S.bits.astype(np.int64).cumsum(axis=0).cumsum(axis=1)
    if not _squares_all_hit(prefix, limit):
        return None
    low, high = 1, limit
    while low < high:
        mid = (low + high) // 2
        if _squares_all_hit(prefix, mid):
            high = mid
        else:
            low = mid + 1
    return low
