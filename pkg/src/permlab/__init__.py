"""Exact permanents of graph Laplacians and the inequality per(L o L) <= per(L)^2."""

from .closed_forms import (
    clique_form,
    clique_scalar_holds,
    cycle_laplacian_permanents,
    cycle_series,
    odd_cycle_gap,
)
from .graphs import (
    Bipartition,
    Graph,
    attach_leaf,
    bipartition,
    coalesce,
    delete_vertex,
    edge_join,
    from_edgelist,
    from_graph6,
    make_family,
    one_vertex_union,
    to_edgelist,
    to_graph6,
)
from .lab import (
    ClosureStep,
    certify_block_graph,
    chollet_check,
    verify_coalescence_identity,
    verify_diag_multilinearity,
    verify_graph,
    verify_hadamard_coalescence_identity,
    verify_hypothesis_bundle,
    verify_lieb_bound,
    verify_sign_property,
)
from .matrix import (
    ExactMatrix,
    add_to_diagonal,
    entrywise_abs,
    hadamard,
    laplacian,
    principal_submatrix,
    z_profile,
)
from .permanent import permanent, permanent_naive, permutation_terms, structural_zero
from .search import CampaignConfig, generate, run_campaign

__version__ = "0.1.0"
