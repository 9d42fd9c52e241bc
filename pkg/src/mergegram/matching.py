"""Bottleneck distance between diagrams and the delta-matching oracle.

A delta-matching is a bijection between the two diagrams, each augmented by
the diagonal with infinite multiplicity, moving every point by at most delta
in the L-infinity plane metric. Feasibility reduces to bipartite maximum
matching: a finite dot may pair with a dot of the other diagram within delta,
or retire to the diagonal when half its persistence is within delta, and the
surplus diagonal proxies absorb each other at zero cost. Dots whose diagonal
option is open never obstruct a matching, so it suffices to check that the
dots forced to cross (persistence/2 > delta) can all be covered, once per
side; combining the two one-sided matchings is always possible.

The infimum over delta is attained on the finite candidate set of all
dot-to-dot L-infinity distances, half-persistences, and birth gaps between
infinite dots, so the returned distance is an exact member of that set.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np
from scipy.spatial.distance import cdist

from .diagrams import Diagram

INF = math.inf


def _cross_linf(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[0]))
    return cdist(a, b, metric="chebyshev")


def _rows_coverable(adj: np.ndarray) -> bool:
    """True iff a bipartite matching can cover every left row of adj."""
    n_left, n_right = adj.shape
    if n_left == 0:
        return True
    if n_left > n_right or not adj.any(axis=1).all():
        return False
    neighbors = [np.flatnonzero(adj[u]) for u in range(n_left)]
    match_left = [-1] * n_left
    match_right = [-1] * n_right

    # Hopcroft-Karp; the virtual sink for free right vertices sits at index
    # n_left of the layer array.
    nil = n_left
    unreached = n_left + 1
    dist = [0] * (n_left + 1)

    def bfs() -> bool:
        queue: deque[int] = deque()
        for u in range(n_left):
            if match_left[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = unreached
        dist[nil] = unreached
        while queue:
            u = queue.popleft()
            if dist[u] < dist[nil]:
                for v in neighbors[u]:
                    w = match_right[v]
                    if w < 0:
                        if dist[nil] == unreached:
                            dist[nil] = dist[u] + 1
                    elif dist[w] == unreached:
                        dist[w] = dist[u] + 1
                        queue.append(w)
        return dist[nil] != unreached

    def augment(u: int) -> bool:
        for v in neighbors[u]:
            w = match_right[v]
            if w < 0:
                if dist[nil] != dist[u] + 1:
                    continue
            elif dist[w] != dist[u] + 1 or not augment(w):
                continue
            match_left[u] = v
            match_right[v] = u
            return True
        dist[u] = unreached
        return False

    matched = 0
    while bfs():
        for u in range(n_left):
            if match_left[u] < 0 and augment(u):
                matched += 1
        if matched == n_left:
            return True
    return False


def _infinite_parts_match(d1: Diagram, d2: Diagram, delta: float) -> bool:
    b1 = d1.infinite_births()
    b2 = d2.infinite_births()
    if b1.size != b2.size:
        return False
    if b1.size == 0:
        return True
    # Sorted pairing minimizes the largest birth shift on the line.
    return bool(np.abs(b1 - b2).max() <= delta)


def delta_matching_exists(d1: Diagram, d2: Diagram, delta: float) -> bool:
    """True iff the diagonal-augmented diagrams admit a delta-matching."""
    if delta < 0:
        raise ValueError("delta must be >= 0")
    if not _infinite_parts_match(d1, d2, delta):
        return False
    a = d1.finite_dots()
    b = d2.finite_dots()
    adj = _cross_linf(a, b) <= delta
    forced_a = (a[:, 1] - a[:, 0]) / 2 > delta
    forced_b = (b[:, 1] - b[:, 0]) / 2 > delta
    return _rows_coverable(adj[forced_a]) and _rows_coverable(adj.T[forced_b])


def bottleneck_candidates(d1: Diagram, d2: Diagram) -> np.ndarray:
    """Sorted unique candidate deltas on which the bottleneck infimum is attained."""
    a = d1.finite_dots()
    b = d2.finite_dots()
    values = [np.zeros(1)]
    values.append(_cross_linf(a, b).ravel())
    for dots in (a, b):
        if dots.size:
            values.append((dots[:, 1] - dots[:, 0]) / 2)
    i1 = d1.infinite_births()
    i2 = d2.infinite_births()
    if i1.size and i2.size:
        values.append(np.abs(i1[:, None] - i2[None, :]).ravel())
    return np.unique(np.concatenate(values))


def bottleneck_lower_bound(d1: Diagram, d2: Diagram) -> float:
    """Cheap lower bound: every dot must reach the other diagram or the diagonal.

    Infinite dots must pair up by birth, so a count mismatch already forces
    an infinite distance.
    """
    i1 = d1.infinite_births()
    i2 = d2.infinite_births()
    if i1.size != i2.size:
        return INF
    bound = float(np.abs(i1 - i2).max()) if i1.size else 0.0
    a = d1.finite_dots()
    b = d2.finite_dots()
    cross = _cross_linf(a, b)
    for dots, nearest in (
        (a, cross.min(axis=1) if b.size else None),
        (b, cross.min(axis=0) if a.size else None),
    ):
        if dots.size == 0:
            continue
        to_diag = (dots[:, 1] - dots[:, 0]) / 2
        per_dot = to_diag if nearest is None else np.minimum(to_diag, nearest)
        bound = max(bound, float(per_dot.max()))
    return bound


def bottleneck_distance(d1: Diagram, d2: Diagram) -> float:
    """Least delta admitting a delta-matching; inf when infinite dots cannot pair."""
    if d1.infinite_births().size != d2.infinite_births().size:
        return INF
    candidates = bottleneck_candidates(d1, d2)
    lo = int(np.searchsorted(candidates, bottleneck_lower_bound(d1, d2)))
    hi = len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if delta_matching_exists(d1, d2, float(candidates[mid])):
            hi = mid
        else:
            lo = mid + 1
    delta = float(candidates[lo])
    assert delta_matching_exists(d1, d2, delta)
    return delta
