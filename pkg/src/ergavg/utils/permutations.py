"""
Permutations as index arrays
============================

A permutation of ``0..n-1`` is an integer array ``p`` with ``p[x]`` the
image of ``x``.  Composition ``(a ∘ b)[x] = a[b[x]]`` is ``a[b]``.

.. autosummary::

    ~CycleIndex
    ~is_permutation
    ~identity
    ~inverse
    ~compose
"""

import math

import numpy as np


def identity(n):
    """The identity permutation on ``n`` points."""
    return np.arange(n, dtype=np.int64)


def is_permutation(p, n):
    """True if ``p`` is a permutation of ``0..n-1``."""
    p = np.asarray(p)
    if p.shape != (n,):
        return False
    return bool(np.array_equal(np.sort(p), np.arange(n)))


def inverse(p):
    """Inverse permutation."""
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


def compose(a, b):
    """``a ∘ b``: apply ``b`` first."""
    return a[b]


class CycleIndex:
    """
    Cycle decomposition of a permutation, for fast integer powers.

    ``power(k)`` is computed for any integer ``k`` (negative included) as a
    shift along each cycle, without repeated composition.
    """

    def __init__(self, p):
        """Decompose ``p`` into cycles."""
        p = np.asarray(p, dtype=np.int64)
        n = len(p)
        self.flat = np.empty(n, dtype=np.int64)
        self.start = np.empty(n, dtype=np.int64)
        self.length = np.empty(n, dtype=np.int64)
        self.position = np.empty(n, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        cursor = 0
        lengths = []
        for x in range(n):
            if seen[x]:
                continue
            cycle = []
            y = x
            while not seen[y]:
                seen[y] = True
                cycle.append(y)
                y = int(p[y])
            size = len(cycle)
            lengths.append(size)
            for pos, y in enumerate(cycle):
                self.flat[cursor + pos] = y
                self.start[y] = cursor
                self.length[y] = size
                self.position[y] = pos
            cursor += size
        self.order = math.lcm(*lengths) if lengths else 1

    def power(self, k):
        """The permutation ``p**k``."""
        return self.flat[self.start + (self.position + k) % self.length]
