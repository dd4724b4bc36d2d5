from .dbscan import dbscan_star_cut, dbscan_star_oracle
from .linkage import GenieParams, GenieStep, genie, gini_index, single_linkage_cut
from .lumbermark import (
    ClusteringError,
    CutState,
    LumbermarkParams,
    leaves,
    lumbermark,
    lumbermark_cut,
    lumbermark_trace,
)

__all__ = [
    "ClusteringError",
    "CutState",
    "GenieParams",
    "GenieStep",
    "LumbermarkParams",
    "dbscan_star_cut",
    "dbscan_star_oracle",
    "genie",
    "gini_index",
    "leaves",
    "lumbermark",
    "lumbermark_cut",
    "lumbermark_trace",
    "single_linkage_cut",
]
