"""Spectral clustering of hypergraphs with edge-dependent vertex weights.

The second eigenvector of the hypergraph 1-Laplacian is computed by an
inverse power method whose inner convex problems are solved on a reduced
directed graph; thresholding the eigenvector at the best normalized Cheeger
cut yields the bipartition.  A random-walk 2-Laplacian baseline and
exhaustive desk-scale oracles round out the package.
"""

from .baseline import (
    baseline_eigenvector,
    normalized_laplacian_embedding,
    random_walk_adjacency,
    random_walk_splitting_penalty,
    stationary_distribution,
    transition_matrix,
)
from .config import RunConfig
from .errors import (
    BudgetExceededError,
    ContractError,
    ConvergenceError,
    IngestError,
    NotReducibleError,
    ParseError,
)
from .hgio import (
    parse_hypergraph_text,
    read_hypergraph_file,
    serialize_hypergraph,
    write_hypergraph_file,
)
from .hypergraph import (
    EdvwHypergraph,
    Hyperedge,
    RawEdge,
    RawHypergraph,
    SubmodularHypergraph,
    cut_weight,
    derive_weights,
    dirichlet_energy,
    lovasz_extension,
    ncc,
    power_gamma,
)
from .ingest import corpus_to_hypergraph, features_to_hypergraph, tokenize
from .ipm import (
    IpmResult,
    Partition,
    inverse_power_method,
    rayleigh_quotient,
    threshold_partition,
    weighted_median,
    weighted_sign_vector,
)
from .oracles import (
    OracleBudget,
    brute_cheeger,
    brute_sfm,
    check_reduction_cut,
    minimize_extension_over_auxiliaries,
    sfm_via_prox,
)
from .pipeline import baseline_cluster, cluster_hypergraph, run_sweep
from .reduction import (
    ReducedDigraph,
    arc_list_dump,
    digraph_cut,
    directed_total_variation,
    reduce_to_digraph,
)
from .report import ClusteringReport, clustering_error
from .solvers import (
    DualPairing,
    GradientOperator,
    InnerSolution,
    build_operator,
    lipschitz_bound,
    operator_norm_estimate,
    solve_inner_fista,
    solve_inner_pdhg,
)
from .splitting import SplittingSpec, max_splitting_penalty, splitting_penalty

__version__ = "0.1.0"
