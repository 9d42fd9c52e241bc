"""Dendrograms of merge sets and the single-linkage dendrogram of an MST.

A dendrogram is a partition-valued function of the scale: clusters only
coarsen, there are finitely many merge scales, and the final partition is the
single block. Equal-length MST edges are coalesced into simultaneous k-way
merge events, so every merge set has a strictly positive lifespan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import groupby

from .mst import Mst, UnionFind


@dataclass(frozen=True)
class MergeEvent:
    """Two or more live clusters merging into a new one at the given scale."""

    scale: float
    merged_cluster_ids: tuple[int, ...]
    new_cluster_id: int


@dataclass(frozen=True)
class Dendrogram:
    """Merge-event sequence over n_leaves initial clusters, all born at scale 0."""

    n_leaves: int
    events: tuple[MergeEvent, ...]


@dataclass(frozen=True)
class MergeSetLife:
    """Lifespan [birth, death) of one merge set; the final cluster never dies."""

    cluster_id: int
    birth: float
    death: float  # math.inf for the single-block partition


def sl_dendrogram(mst: Mst, scale_factor: float = 0.5) -> Dendrogram:
    """Single-linkage dendrogram of an MST.

    Each MST edge of length L produces a merge at scale = scale_factor * L;
    the default 0.5 is the ball-radius convention (two points at distance 1
    merge when their radius-0.5 balls touch). Edges with equal scaled length
    collapse into one simultaneous event per connected group. Zero-length
    edges (coincident points) are folded into the initial partition: the
    partition at scale 0 already has such points in one cluster.
    """
    if scale_factor <= 0:
        raise ValueError("scale_factor must be > 0")
    uf = UnionFind(mst.n)
    scaled = [(scale_factor * e.length, e) for e in mst.edges]

    positive = []
    for s, e in scaled:
        if s == 0.0:
            uf.union(e.u, e.v)
        else:
            positive.append((s, e))

    # Leaf ids in order of each component's smallest point index.
    cluster_of_root: dict[int, int] = {}
    for p in range(mst.n):
        root = uf.find(p)
        if root not in cluster_of_root:
            cluster_of_root[root] = len(cluster_of_root)
    n_leaves = len(cluster_of_root)

    events = []
    next_id = n_leaves
    for scale, group in groupby(positive, key=lambda se: se[0]):
        # Tied edges merge simultaneously: every connected bunch of clusters
        # they link becomes one k-way event.
        edge_roots = [(uf.find(e.u), uf.find(e.v)) for _, e in group]
        pre_roots = {r for pair in edge_roots for r in pair}
        for ra, rb in edge_roots:
            uf.union(ra, rb)
        bunches: dict[int, list[int]] = {}
        for r in sorted(pre_roots):
            bunches.setdefault(uf.find(r), []).append(cluster_of_root.pop(r))
        for root, ids in sorted(bunches.items(), key=lambda kv: min(kv[1])):
            events.append(MergeEvent(scale, tuple(sorted(ids)), next_id))
            cluster_of_root[root] = next_id
            next_id += 1
    return Dendrogram(n_leaves, tuple(events))


def validate_dendrogram(d: Dendrogram) -> list[str]:
    """Check the dendrogram conditions; returns violations, never raises.

    (a) the event sequence ends in a single live cluster, (b) clusters only
    merge (each id created once, consumed at most once, alive when consumed),
    (c) merges at one scale are simultaneous (an event never consumes a
    cluster born at its own scale) and scales never decrease.
    """
    violations = []
    if d.n_leaves < 1:
        violations.append("(b) dendrogram needs at least one leaf")
        return violations
    born_at = {i: 0.0 for i in range(d.n_leaves)}
    alive = set(born_at)
    consumed: set[int] = set()
    prev_scale = 0.0
    for k, ev in enumerate(d.events):
        if not math.isfinite(ev.scale) or ev.scale < 0:
            violations.append(f"(c) event {k}: scale {ev.scale} is not a nonnegative real")
        if ev.scale < prev_scale:
            violations.append(f"(c) event {k}: scale {ev.scale} decreases below {prev_scale}")
        prev_scale = max(prev_scale, ev.scale)
        ids = ev.merged_cluster_ids
        if len(ids) < 2 or len(set(ids)) != len(ids):
            violations.append(f"(b) event {k}: needs >= 2 distinct merged ids, got {ids}")
        for c in ids:
            if c in consumed:
                violations.append(f"(b) event {k}: cluster {c} already consumed")
            elif c not in alive:
                violations.append(f"(b) event {k}: cluster {c} was never created")
            elif born_at[c] == ev.scale:
                violations.append(
                    f"(c) event {k}: cluster {c} born and consumed at the same scale "
                    f"{ev.scale}; simultaneous merges must coalesce"
                )
        if ev.new_cluster_id in alive or ev.new_cluster_id in consumed:
            violations.append(f"(b) event {k}: cluster id {ev.new_cluster_id} created twice")
        alive.difference_update(ids)
        consumed.update(ids)
        alive.add(ev.new_cluster_id)
        born_at[ev.new_cluster_id] = ev.scale
    if len(alive) != 1:
        violations.append(f"(a) final partition has {len(alive)} live clusters, expected 1")
    return violations


def merge_set_lives(d: Dendrogram) -> list[MergeSetLife]:
    """Lifespans of all merge sets: one record per leaf and per merge event.

    Leaves are born at scale 0; each cluster dies at the scale of the event
    consuming it; exactly one record (the single-block partition) has
    infinite death.
    """
    violations = validate_dendrogram(d)
    if violations:
        raise ValueError("invalid dendrogram: " + "; ".join(violations))
    born_at = {i: 0.0 for i in range(d.n_leaves)}
    alive = set(born_at)
    lives = []
    for ev in d.events:
        for c in ev.merged_cluster_ids:
            lives.append(MergeSetLife(c, born_at[c], ev.scale))
            alive.remove(c)
        alive.add(ev.new_cluster_id)
        born_at[ev.new_cluster_id] = ev.scale
    last = alive.pop()
    lives.append(MergeSetLife(last, born_at[last], math.inf))
    return lives
