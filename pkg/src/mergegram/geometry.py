"""Point clouds, explicit finite metrics, Hausdorff distance, and the seeded
random constructions (sampling, noise, rotations) used by the experiment
harnesses.

All randomness flows through ``numpy.random.Generator``; every public function
accepts an integer seed, a ``SeedSequence`` or an existing generator, so
experiment code can hand out independent per-trial streams via
:func:`derived_rng`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.spatial.distance import cdist

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator]


def derived_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator keyed by (seed, key...).

    Streams with different keys never overlap, so trials/samples can be
    generated in any order (or in parallel) with identical results.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Finite list of points in m-dimensional Euclidean space."""

    points: np.ndarray  # (n, dim) float64, read-only

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:  # a bare coordinate list is a 1D cloud
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise ValueError("points must form an (n, dim) array")
        if pts.shape[1] < 1:
            raise ValueError("dimension must be positive")
        if pts.size and not np.isfinite(pts).all():
            raise ValueError("coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __repr__(self) -> str:
        return f"PointCloud(n={self.n}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Explicit finite metric given by an n x n matrix of distances.

    Symmetry, zero diagonal, finiteness and nonnegativity are enforced; the
    triangle inequality is deliberately not (shortest-path matrices are
    consumed as-is, and downstream algorithms only need symmetry).
    """

    d: np.ndarray  # (n, n) float64, read-only

    def __post_init__(self) -> None:
        d = np.array(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if d.shape[0] == 0:
            raise ValueError("empty input")
        if not np.isfinite(d).all():
            raise ValueError("distances must be finite")
        if (d < 0).any():
            raise ValueError("distances must be nonnegative")
        if (np.diag(d) != 0).any():
            raise ValueError("diagonal must be zero")
        if not (d == d.T).all():
            raise ValueError("distance matrix must be symmetric")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n})"


# Either a Euclidean cloud or an explicit metric; every metric-consuming
# operation accepts both.
MetricInput = Union[PointCloud, DistanceMatrix]


def distance_matrix(cloud: PointCloud) -> DistanceMatrix:
    """Pairwise Euclidean distance matrix of a nonempty cloud."""
    if cloud.n == 0:
        raise ValueError("empty input")
    if cloud.n == 1:
        return DistanceMatrix(np.zeros((1, 1)))
    d = cdist(cloud.points, cloud.points)
    # cdist can leave tiny asymmetries / nonzero diagonal at float precision
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


def as_distance_matrix(m: MetricInput) -> DistanceMatrix:
    if isinstance(m, DistanceMatrix):
        return m
    if isinstance(m, PointCloud):
        return distance_matrix(m)
    raise TypeError(f"expected PointCloud or DistanceMatrix, got {type(m).__name__}")


def _hausdorff_from_cross(cross: np.ndarray) -> float:
    directed_ab = cross.min(axis=1).max()
    directed_ba = cross.min(axis=0).max()
    return float(max(directed_ab, directed_ba))


def hausdorff_distance(a: PointCloud, b: PointCloud) -> float:
    """Hausdorff distance between two nonempty clouds in the same space.

    Max over both directions of the farthest-point-to-nearest-point distance.
    """
    a = a if isinstance(a, PointCloud) else PointCloud(a)
    b = b if isinstance(b, PointCloud) else PointCloud(b)
    if a.n == 0 or b.n == 0:
        raise ValueError("Hausdorff distance of an empty subset is undefined")
    if a.dim != b.dim:
        raise ValueError("clouds live in different dimensions")
    return _hausdorff_from_cross(cdist(a.points, b.points))


def hausdorff_distance_indices(
    dm: DistanceMatrix, a: Sequence[int], b: Sequence[int]
) -> float:
    """Hausdorff distance between two index subsets of an explicit metric."""
    ia = np.asarray(a, dtype=int)
    ib = np.asarray(b, dtype=int)
    if ia.size == 0 or ib.size == 0:
        raise ValueError("Hausdorff distance of an empty subset is undefined")
    if ia.min() < 0 or ia.max() >= dm.n or ib.min() < 0 or ib.max() >= dm.n:
        raise ValueError("index out of range")
    return _hausdorff_from_cross(dm.d[np.ix_(ia, ib)])


@dataclass(frozen=True)
class Cube:
    """Axis-aligned cube [lo, hi]^dim."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("cube bounds must be finite")
        if self.lo > self.hi:
            raise ValueError(f"invalid region bounds: lo={self.lo} > hi={self.hi}")


@dataclass(frozen=True)
class Ball:
    """Ball of the given radius centered at the origin."""

    radius: float = 1.0

    def __post_init__(self) -> None:
        if not np.isfinite(self.radius) or self.radius < 0:
            raise ValueError(f"invalid region bounds: radius={self.radius}")


Region = Union[Cube, Ball]


def _uniform_in_ball(rng: np.random.Generator, radius: float, dim: int) -> np.ndarray:
    # Rejection from the enclosing cube: exact and simple at desk scale.
    while True:
        p = rng.uniform(-radius, radius, size=dim)
        if p @ p <= radius * radius:
            return p


def generate_cloud(n: int, dim: int, region: Region, seed: SeedLike) -> PointCloud:
    """n points i.i.d. uniform in the region; deterministic given the seed."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    if isinstance(region, Cube):
        pts = rng.uniform(region.lo, region.hi, size=(n, dim))
    elif isinstance(region, Ball):
        pts = np.empty((n, dim))
        for i in range(n):
            pts[i] = _uniform_in_ball(rng, region.radius, dim)
    else:
        raise TypeError(f"unknown region type: {type(region).__name__}")
    return PointCloud(pts.reshape(n, dim))


def perturb_cloud(
    cloud: PointCloud,
    eps: float,
    copies_per_point: tuple[int, int] = (1, 3),
    seed: SeedLike = 0,
) -> PointCloud:
    """Replace every point by 1..3 (configurable) points uniform in its eps-ball.

    Every output point is within eps of an input point and every input point
    keeps at least one output point within eps, so the Hausdorff distance
    between input and output is at most eps.
    """
    if cloud.n == 0:
        raise ValueError("empty input")
    if eps < 0:
        raise ValueError("eps must be >= 0")
    lo, hi = copies_per_point
    if not (1 <= lo <= hi):
        raise ValueError(f"invalid copies_per_point range: {copies_per_point}")
    rng = np.random.default_rng(seed)
    counts = rng.integers(lo, hi + 1, size=cloud.n)
    out = np.empty((int(counts.sum()), cloud.dim))
    row = 0
    for i in range(cloud.n):
        for _ in range(counts[i]):
            out[row] = cloud.points[i] + _uniform_in_ball(rng, eps, cloud.dim)
            row += 1
    return PointCloud(out)


def random_rotation(dim: int, seed: SeedLike) -> np.ndarray:
    """Uniform (Haar) rotation matrix: orthonormal with determinant +1.

    Built by QR-orthonormalizing a seeded Gaussian matrix, fixing the sign
    convention, then flipping one axis if needed to land in SO(dim).
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    q = q * np.where(np.diag(r) < 0, -1.0, 1.0)
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def apply_isometry(
    cloud: PointCloud,
    rotation: np.ndarray | None = None,
    translation: np.ndarray | None = None,
) -> PointCloud:
    """Apply an orthogonal map and/or translation; preserves all distances."""
    pts = cloud.points
    if rotation is not None:
        rotation = np.asarray(rotation, dtype=float)
        if rotation.shape != (cloud.dim, cloud.dim):
            raise ValueError("rotation shape does not match cloud dimension")
        pts = pts @ rotation.T
    if translation is not None:
        translation = np.asarray(translation, dtype=float)
        if translation.shape != (cloud.dim,):
            raise ValueError("translation shape does not match cloud dimension")
        pts = pts + translation
    return PointCloud(pts)
