"""Mergegrams of single-linkage dendrograms and 0D persistence for finite
point sets, with bottleneck/Hausdorff distances and experiment harnesses."""

__version__ = "0.1.0"

from .dendrogram import (
    Dendrogram,
    MergeEvent,
    MergeSetLife,
    merge_set_lives,
    sl_dendrogram,
    validate_dendrogram,
)
from .diagrams import (
    Diagram,
    diagram_add,
    diagram_equals,
    diagram_subtract,
    mergegram_from_dendrogram,
    mergegram_from_mst,
    pd0_from_dendrogram,
    pd0_from_mergegram,
    pd0_from_mst,
)
from .experiments import (
    ClassificationConfig,
    ClassificationDataset,
    DatasetSample,
    ExperimentError,
    StabilityConfig,
    StabilityRow,
    generate_classification_dataset,
    knn_classify,
    nn2_diagram,
    split_samples,
    stability_experiment,
)
from .geometry import (
    Ball,
    Cube,
    DistanceMatrix,
    MetricInput,
    PointCloud,
    apply_isometry,
    as_distance_matrix,
    derived_rng,
    distance_matrix,
    generate_cloud,
    hausdorff_distance,
    hausdorff_distance_indices,
    perturb_cloud,
    random_rotation,
)
from .matching import (
    bottleneck_candidates,
    bottleneck_distance,
    bottleneck_lower_bound,
    delta_matching_exists,
)
from .mst import Edge, Mst, UnionFind, compute_mst

__all__ = [
    "__version__",
    "Ball",
    "ClassificationConfig",
    "ClassificationDataset",
    "Cube",
    "DatasetSample",
    "Dendrogram",
    "Diagram",
    "DistanceMatrix",
    "Edge",
    "ExperimentError",
    "MergeEvent",
    "MergeSetLife",
    "MetricInput",
    "Mst",
    "PointCloud",
    "StabilityConfig",
    "StabilityRow",
    "UnionFind",
    "apply_isometry",
    "as_distance_matrix",
    "bottleneck_candidates",
    "bottleneck_distance",
    "bottleneck_lower_bound",
    "compute_mst",
    "delta_matching_exists",
    "derived_rng",
    "diagram_add",
    "diagram_equals",
    "diagram_subtract",
    "distance_matrix",
    "generate_classification_dataset",
    "generate_cloud",
    "hausdorff_distance",
    "hausdorff_distance_indices",
    "knn_classify",
    "merge_set_lives",
    "mergegram_from_dendrogram",
    "mergegram_from_mst",
    "nn2_diagram",
    "pd0_from_dendrogram",
    "pd0_from_mergegram",
    "pd0_from_mst",
    "perturb_cloud",
    "random_rotation",
    "sl_dendrogram",
    "split_samples",
    "stability_experiment",
    "validate_dendrogram",
]
