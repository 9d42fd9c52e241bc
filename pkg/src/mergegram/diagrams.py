"""Birth/death diagrams as multisets, the mergegram, and 0D persistence.

A :class:`Diagram` is a multiset of dots (birth, death) with positive integer
multiplicities; death may be infinite. The same type carries both mergegrams
(one dot per merge set of a dendrogram) and 0D persistence diagrams (dots
(0, d) recording component deaths). The two invariants are linked: the 0D
diagram is recovered from a mergegram by a multiset difference of deaths and
births, which is implemented here and tested as an exact identity.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Union

import numpy as np

from .dendrogram import Dendrogram, merge_set_lives, validate_dendrogram
from .mst import Mst, UnionFind

INF = math.inf

DotLike = Union[tuple[float, float], tuple[float, float, int]]


class Diagram:
    """Multiset of dots (birth, death), death possibly infinite.

    Equality is exact multiset equality; use :func:`diagram_equals` for
    coordinate-tolerant comparison. Instances are immutable values.
    """

    __slots__ = ("_dots",)

    def __init__(self, dots: Iterable[DotLike] = ()):
        acc: dict[tuple[float, float], int] = {}
        for item in dots:
            if len(item) == 2:
                b, d = item
                m = 1
            else:
                b, d, m = item
            b, d, m = float(b), float(d), int(m)
            if not math.isfinite(b) or b < 0:
                raise ValueError(f"birth must be a finite nonnegative real, got {b}")
            if math.isnan(d) or d < b:
                raise ValueError(f"death must satisfy death >= birth, got ({b}, {d})")
            if m < 1:
                raise ValueError(f"multiplicity must be >= 1, got {m}")
            key = (b, d)
            acc[key] = acc.get(key, 0) + m
        self._dots = {k: acc[k] for k in sorted(acc)}

    def __iter__(self) -> Iterator[tuple[float, float, int]]:
        for (b, d), m in self._dots.items():
            yield b, d, m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self._dots == other._dots

    def __hash__(self) -> int:
        return hash(tuple(self._dots.items()))

    def __repr__(self) -> str:
        inner = ", ".join(
            f"({b}, {'inf' if d == INF else d})" + (f"x{m}" if m > 1 else "")
            for b, d, m in self
        )
        return f"Diagram({{{inner}}})"

    @property
    def n_dots(self) -> int:
        """Number of distinct dots."""
        return len(self._dots)

    @property
    def total_multiplicity(self) -> int:
        return sum(self._dots.values())

    def multiplicity(self, birth: float, death: float) -> int:
        return self._dots.get((float(birth), float(death)), 0)

    def expanded(self) -> list[tuple[float, float]]:
        """All dots repeated by multiplicity, sorted by (birth, death)."""
        out = []
        for (b, d), m in self._dots.items():
            out.extend([(b, d)] * m)
        return out

    def finite_dots(self) -> np.ndarray:
        """(k, 2) array of finite dots expanded by multiplicity."""
        rows = [(b, d) for (b, d), m in self._dots.items() if d < INF for _ in range(m)]
        return np.array(rows, dtype=float).reshape(len(rows), 2)

    def infinite_births(self) -> np.ndarray:
        """Sorted births of infinite-death dots, expanded by multiplicity."""
        rows = [b for (b, d), m in self._dots.items() if d == INF for _ in range(m)]
        return np.array(sorted(rows), dtype=float)


def diagram_add(d1: Diagram, d2: Diagram) -> Diagram:
    """Multiset union (multiplicities add)."""
    return Diagram(list(d1) + list(d2))


def diagram_subtract(d1: Diagram, d2: Diagram, tol: float = 0.0) -> Diagram:
    """Multiset difference d1 - d2; requires d2 to be contained in d1.

    With tol > 0 each d2 dot consumes the nearest d1 dot within tol per
    coordinate (infinite deaths only ever match infinite deaths).
    """
    if tol == 0.0:
        rest = dict(d1._dots)
        for b, d, m in d2:
            have = rest.get((b, d), 0)
            if have < m:
                raise ValueError(f"subtract underflow at dot ({b}, {d})")
            if have == m:
                del rest[(b, d)]
            else:
                rest[(b, d)] = have - m
        return Diagram((b, d, m) for (b, d), m in rest.items())
    remaining = d1.expanded()
    for b, d in d2.expanded():
        best, best_cost = -1, INF
        for i, (bb, dd) in enumerate(remaining):
            if (d == INF) != (dd == INF):
                continue
            cost = max(abs(b - bb), 0.0 if d == INF else abs(d - dd))
            if cost <= tol and cost < best_cost:
                best, best_cost = i, cost
        if best < 0:
            raise ValueError(f"subtract underflow at dot ({b}, {d}) within tol {tol}")
        remaining.pop(best)
    return Diagram(remaining)


def diagram_equals(d1: Diagram, d2: Diagram, tol: float = 0.0) -> bool:
    """Multiset equality with per-coordinate tolerance and exact multiplicities."""
    if tol == 0.0:
        return d1 == d2
    a, b = d1.expanded(), d2.expanded()
    if len(a) != len(b):
        return False
    for (b1, dth1), (b2, dth2) in zip(a, b):
        if abs(b1 - b2) > tol:
            return False
        if (dth1 == INF) != (dth2 == INF):
            return False
        if dth1 < INF and abs(dth1 - dth2) > tol:
            return False
    return True


def mergegram_from_mst(
    mst: Mst, scale_factor: float = 0.5, drop_zero_life: bool = True
) -> Diagram:
    """Mergegram of the single-linkage clustering, straight from the MST.

    Edges are processed in increasing scaled length; each merge of two
    components emits one dot per component, (its formation scale, the current
    scale). The final single component contributes (last merge scale, inf).
    Tied edges processed sequentially produce dots with birth = death, which
    the simultaneous-merge reading of the dendrogram never creates; they are
    dropped by default (they sit on the diagonal, so no distance is affected)
    and kept under the flag for auditing the literal edge-by-edge procedure.
    """
    if scale_factor <= 0:
        raise ValueError("scale_factor must be > 0")
    uf = UnionFind(mst.n)
    prev = [0.0] * mst.n
    dots: list[tuple[float, float]] = []
    last = 0.0
    for e in mst.edges:
        s = scale_factor * e.length
        c1, c2 = uf.find(e.u), uf.find(e.v)
        dots.append((prev[c1], s))
        dots.append((prev[c2], s))
        t = uf.union(c1, c2)
        prev[t] = s
        last = s
    dots.append((last, INF))
    if drop_zero_life:
        dots = [(b, d) for b, d in dots if b != d]
    return Diagram(dots)


def mergegram_from_dendrogram(d: Dendrogram) -> Diagram:
    """Mergegram by definition: one dot per merge-set lifespan."""
    return Diagram((life.birth, life.death) for life in merge_set_lives(d))


def pd0_from_mst(mst: Mst, scale_factor: float = 0.5) -> Diagram:
    """0D persistence diagram from MST edge lengths.

    One dot (0, scale_factor * length) per edge, counted with multiplicity,
    plus the infinite dot (0, inf) for the component that never dies. Dots
    with death 0 (coincident points) lie on the diagonal and are excluded,
    as in any persistence diagram.
    """
    if scale_factor <= 0:
        raise ValueError("scale_factor must be > 0")
    dots: list[tuple[float, float]] = [
        (0.0, scale_factor * e.length) for e in mst.edges if e.length > 0
    ]
    dots.append((0.0, INF))
    return Diagram(dots)


def pd0_from_dendrogram(d: Dendrogram) -> Diagram:
    """0D persistence from merge events: a k-way merge yields k-1 deaths."""
    violations = validate_dendrogram(d)
    if violations:
        raise ValueError("invalid dendrogram: " + "; ".join(violations))
    dots: list[tuple[float, float, int]] = [
        (0.0, ev.scale, len(ev.merged_cluster_ids) - 1) for ev in d.events
    ]
    dots.append((0.0, INF, 1))
    return Diagram(dots)


def pd0_from_mergegram(mg: Diagram) -> Diagram:
    """Recover 0D persistence from a mergegram by multiset difference.

    For every scale s the output multiplicity of (0, s) is the number of
    mergegram deaths at s minus the number of births at s; trivial dots
    (0, 0) are ignored. A negative count means the input was not a valid
    mergegram.
    """
    count: dict[float, int] = {}
    for b, d, m in mg:
        count[d] = count.get(d, 0) + m
        if b > 0:
            count[b] = count.get(b, 0) - m
    dots: list[tuple[float, float, int]] = []
    for s, c in count.items():
        if c < 0:
            raise ValueError(f"not a valid mergegram: {-c} unmatched births at scale {s}")
        if c > 0 and s > 0:
            dots.append((0.0, s, c))
    return Diagram(dots)
