"""Union-find and exact minimum spanning trees over a finite metric.

The MST is computed by Prim's algorithm with a dense O(n^2) scan, which is
exact and allocation-light at desk scale (n up to a few thousand). Ties
between equal-length edges are broken deterministically, and the sorted
multiset of edge lengths is unique regardless of which optimal tree is
returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import MetricInput, as_distance_matrix


class UnionFind:
    """Disjoint sets over indices 0..n-1, path compression + union by size."""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        self._parent = list(range(n))
        self._size = [1] * n
        self.component_count = n

    def __len__(self) -> int:
        return len(self._parent)

    def _check(self, i: int) -> None:
        if not 0 <= i < len(self._parent):
            raise IndexError(f"index {i} out of range for {len(self._parent)} elements")

    def find(self, i: int) -> int:
        self._check(i)
        root = i
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[i] != root:
            self._parent[i], i = root, self._parent[i]
        return root

    def union(self, i: int, j: int) -> int:
        """Merge the components of i and j; returns the merged root."""
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return ri
        if self._size[ri] < self._size[rj]:
            ri, rj = rj, ri
        self._parent[rj] = ri
        self._size[ri] += self._size[rj]
        self.component_count -= 1
        return ri

    def connected(self, i: int, j: int) -> bool:
        return self.find(i) == self.find(j)


@dataclass(frozen=True)
class Edge:
    """Undirected edge between point indices u < v with Euclidean/metric length."""

    u: int
    v: int
    length: float

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError("edge endpoints must differ")
        if self.length < 0:
            raise ValueError("edge length must be >= 0")


@dataclass(frozen=True)
class Mst:
    """Minimum spanning tree: n vertices and n-1 edges sorted by length."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("at least one vertex required")
        if len(self.edges) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} edges, got {len(self.edges)}")
        uf = UnionFind(self.n)
        prev = 0.0
        for e in self.edges:
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"edge {e} out of range")
            if e.length < prev:
                raise ValueError("edges must be sorted nondecreasing by length")
            prev = e.length
            if uf.find(e.u) == uf.find(e.v):
                raise ValueError("edge set contains a cycle")
            uf.union(e.u, e.v)

    @property
    def total_length(self) -> float:
        return float(sum(e.length for e in self.edges))

    def lengths(self) -> list[float]:
        return [e.length for e in self.edges]


def compute_mst(m: MetricInput) -> Mst:
    """Exact MST of a finite metric (Prim, dense scan).

    When several MSTs exist the returned edge set is the deterministic one
    picked by (length, min index, max index) tie order; the sorted edge-length
    multiset is the same for every optimal tree.
    """
    d = as_distance_matrix(m).d
    n = d.shape[0]
    if n == 1:
        return Mst(1, ())
    visited = np.zeros(n, dtype=bool)
    visited[0] = True
    min_dist = d[0].copy()
    min_dist[0] = np.inf
    attach = np.zeros(n, dtype=np.intp)
    edges = []
    for _ in range(n - 1):
        j = int(np.argmin(min_dist))  # first occurrence = smallest index on ties
        u = int(attach[j])
        edges.append(Edge(min(u, j), max(u, j), float(d[u, j])))
        visited[j] = True
        min_dist[j] = np.inf
        closer = (d[j] < min_dist) & ~visited  # strict < keeps earliest attachment
        attach[closer] = j
        min_dist[closer] = d[j, closer]
    edges.sort(key=lambda e: (e.length, e.u, e.v))
    return Mst(n, tuple(edges))
