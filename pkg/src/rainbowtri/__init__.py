"""Rainbow-triangle-free triples of graphs.

Exact data model, explicit constructions, the density constant gamma,
exact small-n search and checkers for the structure of extremal triples.
"""

__version__ = "0.1.0"

from rainbowtri.kernels import BACKEND
from rainbowtri.coloring import (
    Coloring,
    ColoringError,
    EdgeCounts,
    ParseError,
    RainbowWitness,
    canonical_form,
    edge_counts,
    has_rainbow_triangle,
    is_fully_colored,
    new_coloring,
    parse,
    product,
    serialize,
    set_colors,
    t_colored_counts,
)
from rainbowtri.constructions import (
    TwoCliqueParams,
    family_counts,
    frankl_bipartite,
    theorem1_construction,
    two_clique_family,
)
from rainbowtri.objective import (
    crossover_n,
    discrete_best,
    eval_objective,
    maximize_objective,
)
from rainbowtri.search import SearchConfig, maximality_closure, search_exact, verify_witness
from rainbowtri.analysis import (
    check_b_inequality,
    check_claim1,
    check_d_inequality,
    multi_color_subgraph,
    proof_diagnostics,
    sweep_inequalities,
    three_color_isolation,
)
