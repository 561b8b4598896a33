"""Complex-network analysis of weighted power distribution grids."""

from .errors import GridError
from .grid_model import (
    LINK_WEIGHT,
    EdgeRecord,
    GridGraph,
    NodeRecord,
    build_graph,
    connected_components,
    order_size_avg_degree,
)
from .ingest import generate_synthetic_grid, load_graph, parse_grid, write_grid
from .path_metrics import (
    MetricsReport,
    average_path_length,
    characteristic_path_length,
    clustering_coefficient,
    metrics_report,
    normalized_wcpl,
    traversed_nodes_increase,
    weighted_cpl,
    weighted_degree,
)
from .centrality import betweenness, eigenvector_centrality
from .spectral_cut import fiedler_bisect, laplacian, recursive_bisect
from .distributions_fit import betweenness_ccdf, classify, degree_ccdf, fit
from .resilience import RemovalPolicy, compare_policies, robustness_at, simulate_removal
from .baselines import baseline_metrics, random_connected_graph, small_world_test
from .cost_model import alpha, beta, cost_params, price_surface

__version__ = "0.1.0"
