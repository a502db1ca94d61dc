"""
Disjoint sets over ``range(n)``
===============================

.. autosummary::

    ~UnionFind
    ~orbit_labels
"""

import numpy as np


class UnionFind:
    """Union by rank with path compression on the points ``0..n-1``."""

    def __init__(self, n):
        """Start with every point in its own set."""
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        """Representative of the set holding ``x``."""
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        """Merge the sets holding ``x`` and ``y``."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def labels(self):
        """Block label per point, numbered by first appearance."""
        seen = {}
        out = np.empty(len(self.parent), dtype=np.int64)
        for x in range(len(self.parent)):
            out[x] = seen.setdefault(self.find(x), len(seen))
        return out


def orbit_labels(n, maps):
    """
    Orbit label per point for the group generated by ``maps``.

    Each map is an index array ``m`` sending ``x`` to ``m[x]``.  The orbits
    of the generated group are the connected components of the graph with
    edges ``x -- m[x]``.
    """
    uf = UnionFind(n)
    for m in maps:
        for x, y in enumerate(m):
            uf.union(x, int(y))
    return uf.labels()
