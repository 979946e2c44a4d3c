"""Chromatic symmetric functions in the elementary basis, with e-positivity certificates."""

from .compositions import enumerate_compositions, enumerate_no_ones, w_weight
from .esym import CompExpansion, ESym, is_e_positive, project
from .graphs import (
    Graph,
    csf_oracle,
    csf_path,
    csf_spider_abc,
    csf_trinacria,
    cycle_graph,
    path_graph,
    spider_graph,
    trinacria_graph,
)
from .trinacria import decompose, reconstruct

__version__ = "0.1.0"

__all__ = [
    "CompExpansion",
    "ESym",
    "Graph",
    "csf_oracle",
    "csf_path",
    "csf_spider_abc",
    "csf_trinacria",
    "cycle_graph",
    "decompose",
    "enumerate_compositions",
    "enumerate_no_ones",
    "is_e_positive",
    "path_graph",
    "project",
    "reconstruct",
    "spider_graph",
    "trinacria_graph",
    "w_weight",
]
