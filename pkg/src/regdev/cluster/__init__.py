from .elbow import Elbow, KSelectionReport, elbow_detect, elbow_strengths, select_k
from .hierarchy import Dendrogram, DendrogramNode, Linkage, Merge, agglomerate
from .kmeans import ClusterResult, InitMethod, compute_wcss, init_centroids, kmeans_run
from .labels import RATINGS_4, RatedClusters, label_clusters, rating_names
from .optimal1d import kmeans_1d_optimal
from .validity import ValidityScores, validity_indices

__all__ = [
    "ClusterResult", "Dendrogram", "DendrogramNode", "Elbow", "InitMethod",
    "KSelectionReport", "Linkage", "Merge", "RATINGS_4", "RatedClusters",
    "ValidityScores", "agglomerate", "compute_wcss", "elbow_detect",
    "elbow_strengths", "init_centroids", "kmeans_1d_optimal", "kmeans_run",
    "label_clusters", "rating_names", "select_k", "validity_indices",
]
