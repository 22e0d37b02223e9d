from .common import RATING_RAMP, atomic_write, diverging_color, rating_colors
from .geojson import RatedRegion, load_boundaries, write_geojson
from .svg import PlotSpec, read_merge_sidecar, write_corr_heatmap, write_dendrogram, write_scatter
from .tables import (
    ClusterRecord,
    IndexTable,
    read_index_table,
    read_matrix_csv,
    write_clusters,
    write_describe,
    write_index_long,
    write_index_table,
    write_kselect,
    write_matrix_csv,
)

__all__ = [
    "ClusterRecord", "IndexTable", "PlotSpec", "RATING_RAMP", "RatedRegion",
    "atomic_write", "diverging_color", "load_boundaries", "rating_colors",
    "read_index_table", "read_matrix_csv", "read_merge_sidecar", "write_clusters",
    "write_corr_heatmap", "write_dendrogram", "write_describe", "write_geojson",
    "write_index_long", "write_index_table", "write_kselect", "write_matrix_csv",
    "write_scatter",
]
