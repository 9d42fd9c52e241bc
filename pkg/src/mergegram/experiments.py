"""Experiment harnesses: cloud-perturbation stability of the mergegram, the
labeled-cloud dataset generator, the two-nearest-neighbor invariant, and a
deterministic k-NN classification baseline under bottleneck distance.

Every trial and sample draws from its own derived random stream keyed by
(seed, indices), so results are bit-reproducible and order-independent.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .diagrams import Diagram, mergegram_from_mst, pd0_from_mst
from .geometry import (
    Ball,
    Cube,
    MetricInput,
    PointCloud,
    Region,
    _uniform_in_ball,
    as_distance_matrix,
    derived_rng,
    generate_cloud,
    hausdorff_distance,
    perturb_cloud,
    random_rotation,
)
from .matching import bottleneck_distance, bottleneck_lower_bound, delta_matching_exists
from .mst import compute_mst

INF = math.inf


class ExperimentError(RuntimeError):
    """A hard experiment assertion failed (names the violating trial)."""


@dataclass(frozen=True)
class StabilityConfig:
    """Noisy-perturbation experiment: clouds in a region, noise grid, trials."""

    n_points: int = 20
    dim: int = 3
    region: Region = field(default_factory=lambda: Cube(0.0, 100.0))
    eps_min: float = 0.5
    eps_max: float = 5.0
    eps_step: float = 0.5
    trials: int = 20
    seed: int = 0
    scale_factor: float = 0.5
    copies_per_point: tuple[int, int] = (1, 3)

    def __post_init__(self) -> None:
        if self.n_points < 1:
            raise ValueError("n_points must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not (0 < self.eps_min <= self.eps_max) or self.eps_step <= 0:
            raise ValueError("eps grid must be positive and increasing")

    def eps_values(self) -> list[float]:
        count = int(round((self.eps_max - self.eps_min) / self.eps_step)) + 1
        return [self.eps_min + i * self.eps_step for i in range(count)]

    @classmethod
    def full_scale(cls, seed: int = 0) -> "StabilityConfig":
        """Full-size preset: 100 points in [0,100]^3, noise 0.1..10, 100 trials."""
        return cls(
            n_points=100,
            dim=3,
            region=Cube(0.0, 100.0),
            eps_min=0.1,
            eps_max=10.0,
            eps_step=0.1,
            trials=100,
            seed=seed,
        )


@dataclass(frozen=True)
class StabilityRow:
    """Per-noise-bound aggregates of bottleneck and Hausdorff distances."""

    eps: float
    avg_bd: float
    max_bd: float
    avg_hd: float
    max_hd: float


def stability_experiment(cfg: StabilityConfig) -> list[StabilityRow]:
    """For each noise bound: perturb seeded clouds and compare mergegrams.

    Every trial is checked against the stability guarantee BD <= HD (within
    1e-9) and against HD <= eps, which holds by construction of the
    perturbation; a violation aborts with the offending seed/trial.
    """
    rows = []
    for ei, eps in enumerate(cfg.eps_values()):
        bds, hds = [], []
        for t in range(cfg.trials):
            black = generate_cloud(
                cfg.n_points, cfg.dim, cfg.region, derived_rng(cfg.seed, ei, t, 0)
            )
            red = perturb_cloud(
                black, eps, cfg.copies_per_point, derived_rng(cfg.seed, ei, t, 1)
            )
            hd = hausdorff_distance(black, red)
            bd = bottleneck_distance(
                mergegram_from_mst(compute_mst(black), cfg.scale_factor),
                mergegram_from_mst(compute_mst(red), cfg.scale_factor),
            )
            if bd > hd + 1e-9:
                raise ExperimentError(
                    f"stability violated: BD={bd} > HD={hd} "
                    f"(seed={cfg.seed}, eps={eps}, trial={t})"
                )
            if hd > eps + 1e-9:
                raise ExperimentError(
                    f"perturbation escaped its noise bound: HD={hd} > eps={eps} "
                    f"(seed={cfg.seed}, trial={t})"
                )
            bds.append(bd)
            hds.append(hd)
        rows.append(
            StabilityRow(eps, float(np.mean(bds)), max(bds), float(np.mean(hds)), max(hds))
        )
    return rows


def nn2_diagram(m: MetricInput) -> Diagram:
    """Diagram of (d1, d2) distances to the two nearest neighbors of each point."""
    d = as_distance_matrix(m).d
    n = d.shape[0]
    if n < 3:
        raise ValueError("NN(2) undefined for fewer than 3 points")
    off_diag = d + np.diag(np.full(n, np.inf))
    two_smallest = np.sort(off_diag, axis=1)[:, :2]
    return Diagram((row[0], row[1]) for row in two_smallest)


@dataclass(frozen=True)
class ClassificationConfig:
    """Labeled-cloud dataset: classes of perturbed, extended, rotated copies."""

    n_classes: int = 10
    base_size: int = 100
    samples_per_class: int = 100
    added_points: int = 25
    dim: int = 2
    eps: float = 0.01
    seed: int = 0
    scale_factor: float = 0.5

    def __post_init__(self) -> None:
        if self.n_classes < 1 or self.base_size < 3 or self.samples_per_class < 1:
            raise ValueError("need >= 1 class, >= 3 base points, >= 1 sample per class")
        if self.added_points < 0 or self.eps < 0:
            raise ValueError("added_points and eps must be >= 0")


@dataclass(frozen=True, eq=False)
class DatasetSample:
    class_id: int
    cloud: PointCloud
    mergegram: Diagram
    pd0: Diagram
    nn2: Diagram
    rotation: np.ndarray  # applied about the origin; kept for auditing


@dataclass(frozen=True)
class ClassificationDataset:
    classes: tuple[tuple[int, PointCloud], ...]
    samples: tuple[DatasetSample, ...]
    config: ClassificationConfig


def generate_classification_dataset(cfg: ClassificationConfig) -> ClassificationDataset:
    """Base clouds in the unit ball; each sample shifts every base point
    uniformly in a cube of side 2*eps, adds points eps-close to base points,
    and applies a random rotation about the origin. The mergegram, 0D
    persistence and NN(2) diagrams are computed per sample.
    """
    classes = []
    samples = []
    for c in range(cfg.n_classes):
        base = generate_cloud(cfg.base_size, cfg.dim, Ball(1.0), derived_rng(cfg.seed, c, 0))
        classes.append((c, base))
        for j in range(cfg.samples_per_class):
            rng = derived_rng(cfg.seed, c, j + 1)
            pts = base.points + rng.uniform(-cfg.eps, cfg.eps, size=(cfg.base_size, cfg.dim))
            if cfg.added_points:
                anchors = rng.integers(0, cfg.base_size, size=cfg.added_points)
                added = np.empty((cfg.added_points, cfg.dim))
                for i, a in enumerate(anchors):
                    added[i] = base.points[a] + _uniform_in_ball(rng, cfg.eps, cfg.dim)
                pts = np.vstack([pts, added])
            rotation = random_rotation(cfg.dim, rng)
            cloud = PointCloud(pts @ rotation.T)
            mst = compute_mst(cloud)
            samples.append(
                DatasetSample(
                    c,
                    cloud,
                    mergegram_from_mst(mst, cfg.scale_factor),
                    pd0_from_mst(mst, cfg.scale_factor),
                    nn2_diagram(cloud),
                    rotation,
                )
            )
    return ClassificationDataset(tuple(classes), tuple(samples), cfg)


def split_samples(
    samples: Sequence[DatasetSample], test_fraction: float = 0.2, seed: int = 0
) -> tuple[list[DatasetSample], list[DatasetSample]]:
    """Seeded stratified split: the same fraction of each class goes to test."""
    if not 0 < test_fraction < 1:
        raise ValueError("test_fraction must be in (0, 1)")
    by_class: dict[int, list[DatasetSample]] = {}
    for s in samples:
        by_class.setdefault(s.class_id, []).append(s)
    train, test = [], []
    for c in sorted(by_class):
        group = by_class[c]
        order = derived_rng(seed, c).permutation(len(group))
        n_test = max(1, int(round(len(group) * test_fraction)))
        test.extend(group[i] for i in order[:n_test])
        train.extend(group[i] for i in order[n_test:])
    return train, test


def _vote(best: list[tuple[float, int]], labels: Sequence[int]) -> int:
    counts = Counter(labels[idx] for _, idx in best)
    top = max(counts.values())
    tied = {label for label, c in counts.items() if c == top}
    if len(tied) == 1:
        return tied.pop()
    # Tie: the class holding the closest neighbor wins, then the smallest id.
    return min(
        tied, key=lambda lab: (min(d for d, i in best if labels[i] == lab), lab)
    )


def knn_classify(
    train: Sequence[tuple[int, Diagram]],
    test: Sequence[tuple[int, Diagram]],
    k: int = 1,
) -> tuple[list[int], float]:
    """k-NN under bottleneck distance; returns predictions and accuracy.

    Neighbor selection and voting are fully deterministic: ties in distance
    fall back to the smaller training index, tied votes to the class with the
    closest member, then the smaller class id. Cheap lower bounds prune most
    exact bottleneck evaluations.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not train:
        raise ValueError("empty training set")
    labels = [label for label, _ in train]
    diagrams = [diagram for _, diagram in train]
    predictions = []
    hits = 0
    for true_label, diagram in test:
        bounds = np.array([bottleneck_lower_bound(diagram, td) for td in diagrams])
        order = np.lexsort((np.arange(len(diagrams)), bounds))
        best: list[tuple[float, int]] = []  # (distance, train index), k smallest
        for idx in order:
            idx = int(idx)
            cutoff = best[-1][0] if len(best) == k else INF
            if bounds[idx] > cutoff:
                break  # every remaining lower bound is at least this large
            if (
                len(best) == k
                and cutoff < INF
                and not delta_matching_exists(diagram, diagrams[idx], cutoff)
            ):
                continue  # true distance exceeds the current k-th best
            dist = bottleneck_distance(diagram, diagrams[idx])
            best.append((dist, idx))
            best.sort()
            del best[k:]
        label = _vote(best, labels)
        predictions.append(label)
        hits += label == true_label
    return predictions, hits / len(test) if test else 0.0
