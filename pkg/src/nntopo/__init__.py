"""Topological fingerprints of MLP weight graphs.

Pipeline: weight tensors -> directed weighted graph -> directed flag
complex -> Z2 persistent homology -> filtered/capped diagrams ->
landscape / silhouette / heat vectorizations -> network distance matrices.
"""

from .config import PipelineConfig
from .diagrams import CleanDiagram, bottleneck, cap_infinity, filter_diagram, wasserstein
from .distances import (
    DistanceMatrix,
    assemble_matrix,
    baseline_norm_distance,
    network_distance,
    vector_distance,
)
from .flagcomplex import FilteredComplex, Simplex, enumerate_simplices, filtration_value
from .graph import (
    MlpWeights,
    LayerWeights,
    WeightedDigraph,
    adjacency_matrix,
    build_graph,
    normalize_weights,
    permute_neurons,
)
from .persistence import PersistenceDiagram, betti_numbers, compute_persistence
from .vectorize import (
    Grid,
    HeatImage,
    LandscapeVec,
    SilhouetteVec,
    heat,
    landscape,
    landscape_distance,
    landscape_norm,
    silhouette,
    vectorize_diagram,
)

__version__ = "0.1.0"

__all__ = [
    "PipelineConfig",
    "CleanDiagram",
    "bottleneck",
    "cap_infinity",
    "filter_diagram",
    "wasserstein",
    "DistanceMatrix",
    "assemble_matrix",
    "baseline_norm_distance",
    "network_distance",
    "vector_distance",
    "FilteredComplex",
    "Simplex",
    "enumerate_simplices",
    "filtration_value",
    "MlpWeights",
    "LayerWeights",
    "WeightedDigraph",
    "adjacency_matrix",
    "build_graph",
    "normalize_weights",
    "permute_neurons",
    "PersistenceDiagram",
    "betti_numbers",
    "compute_persistence",
    "Grid",
    "HeatImage",
    "LandscapeVec",
    "SilhouetteVec",
    "heat",
    "landscape",
    "landscape_distance",
    "landscape_norm",
    "silhouette",
    "vectorize_diagram",
    "__version__",
]
