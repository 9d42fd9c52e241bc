"""Independent brute-force oracles used to validate the fast implementations.

Everything here deliberately avoids the algorithms under test: spanning trees
are enumerated from Prüfer sequences, bottleneck matchings by trying every
bijection, Hausdorff distances by the literal sup-inf double loop.
"""

from __future__ import annotations

import heapq
import itertools
import math

import numpy as np

INF = math.inf


def hausdorff_by_enumeration(a: np.ndarray, b: np.ndarray) -> float:
    def directed(xs, ys):
        worst = 0.0
        for x in xs:
            best = min(float(np.linalg.norm(x - y)) for y in ys)
            worst = max(worst, best)
        return worst

    return max(directed(a, b), directed(b, a))


def prufer_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence into the edge list of a labeled tree on n nodes."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def all_spanning_trees(n: int):
    """Every labeled tree on n nodes (Cayley: n^(n-2) of them), as edge lists."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_edges(seq, n)


def mst_by_enumeration(d: np.ndarray) -> tuple[float, list[float]]:
    """Minimum spanning-tree total length and the optimal sorted length multiset."""
    best_total = INF
    best_lengths: list[float] = []
    for edges in all_spanning_trees(d.shape[0]):
        lengths = sorted(float(d[u, v]) for u, v in edges)
        total = sum(lengths)
        if total < best_total:
            best_total = total
            best_lengths = lengths
    return best_total, best_lengths


def bottleneck_by_enumeration(d1, d2) -> float:
    """Bottleneck distance by trying every diagonal-augmented bijection.

    Finite dots may pair across diagrams or drop to the diagonal at half
    their persistence; infinite dots pair with infinite dots by birth.
    Feasible only for small diagrams.
    """
    i1 = sorted(d1.infinite_births())
    i2 = sorted(d2.infinite_births())
    if len(i1) != len(i2):
        return INF
    inf_best = INF if i1 else 0.0
    for perm in itertools.permutations(range(len(i2))):
        cost = max((abs(i1[i] - i2[p]) for i, p in enumerate(perm)), default=0.0)
        inf_best = min(inf_best, cost)

    a = [t for t in d1.expanded() if t[1] < INF]
    b = [t for t in d2.expanded() if t[1] < INF]
    fin_best = 0.0 if not a and not b else INF
    for k in range(min(len(a), len(b)) + 1):
        for sa in itertools.combinations(range(len(a)), k):
            for sb in itertools.combinations(range(len(b)), k):
                unmatched = max(
                    [(a[i][1] - a[i][0]) / 2 for i in range(len(a)) if i not in sa]
                    + [(b[j][1] - b[j][0]) / 2 for j in range(len(b)) if j not in sb],
                    default=0.0,
                )
                for perm in itertools.permutations(sb):
                    cost = unmatched
                    for i, j in zip(sa, perm):
                        cost = max(
                            cost,
                            abs(a[i][0] - b[j][0]),
                            abs(a[i][1] - b[j][1]),
                        )
                    fin_best = min(fin_best, cost)
    return max(fin_best, inf_best)


def nn2_by_enumeration(points: np.ndarray) -> list[tuple[float, float]]:
    """Two smallest distances from each point to the others, by double loop."""
    n = len(points)
    out = []
    for i in range(n):
        dists = sorted(
            float(np.linalg.norm(points[i] - points[j])) for j in range(n) if j != i
        )
        out.append((dists[0], dists[1]))
    return out
