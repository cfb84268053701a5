"""Weighted Degree Difference Test for a common invariant subspace of multilayer networks."""

__version__ = "0.1.0"

from .estimator import RMHGSampler, WeightedDegreeDifferenceTest
from .exceptions import (AllDegenerate, DegenerateLayer, ModelInfeasible, NeedTwoLayers,
                         ParseError, WddtError)
from .graph import (LayerSummary, MultilayerGraph, degree_vector, edge_density, layer_summary,
                    relabel_nodes, total_degree, two_path_count, two_path_count_bruteforce)
from .io import (MultiplexDataset, SubsetReport, format_multiplex_edgelist,
                 parse_multiplex_edgelist, read_multiplex, select_layers, subset_analysis)
from .model import (ModelSpec, faulhaber_sum, overlap, sample_rmhg, theoretical_rn,
                    weights_power_law, weights_two_block)
from .normal import normal_cdf, normal_quantile, two_sided_p_value
from .simulation import (CellFailure, SimConfig, SimResult, mix64, parse_grid, render_table,
                         run_cell, run_grid, table_cells)
from .statistic import Decision, WddtResult, compute_wddt, decide, sigma_squared

__all__ = [
    "AllDegenerate", "CellFailure", "Decision", "DegenerateLayer", "LayerSummary",
    "ModelInfeasible", "ModelSpec", "MultilayerGraph", "MultiplexDataset", "NeedTwoLayers",
    "ParseError", "RMHGSampler", "SimConfig", "SimResult", "SubsetReport", "WddtError",
    "WddtResult", "WeightedDegreeDifferenceTest", "compute_wddt", "decide", "degree_vector",
    "edge_density", "faulhaber_sum", "format_multiplex_edgelist", "layer_summary", "mix64",
    "normal_cdf", "normal_quantile", "overlap", "parse_grid", "parse_multiplex_edgelist",
    "read_multiplex", "relabel_nodes", "render_table", "run_cell", "run_grid", "sample_rmhg",
    "select_layers", "sigma_squared", "subset_analysis", "table_cells", "theoretical_rn",
    "total_degree", "two_path_count", "two_path_count_bruteforce", "two_sided_p_value",
    "weights_power_law", "weights_two_block",
]
