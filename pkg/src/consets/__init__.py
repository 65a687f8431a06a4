"""Exact counting of connected and dominating-connected vertex sets in
regular graphs, cyclic gadget families, transfer-matrix growth bounds and
small-order extremal search."""

from .counting import (
    CountResult,
    c_value,
    count_connected_brute,
    count_connected_recursive,
    count_dom_connected_brute,
    count_dom_connected_recursive,
    count_independent_brute,
    count_result,
    count_sets,
    round_up_4dec,
)
from .families import (
    Gadget,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    generalized_petersen,
    glue,
    heawood,
    mcgee,
    moebius_ladder,
    near_extremal,
    petersen,
    standard_family,
)
from .graphs import (
    Graph,
    Graph6Error,
    complement,
    components,
    cut_vertices,
    disjoint_union,
    girth,
    induced_is_connected,
    is_dominating,
    parse_graph6,
    regular_degree,
    to_graph6,
)
from .search import SearchReport, generate_regular, search_extremal, table_rows
from .transfer import (
    CellType,
    ColumnState,
    SpectralResult,
    TransferMatrix,
    build_matrix,
    dominant_eigenvalue,
    enumerate_states,
    growth_bound,
    load_fixture_matrix,
    path_count,
    ratio_estimate,
    second_modulus,
    transition_valid,
)

__version__ = "0.1.0"
