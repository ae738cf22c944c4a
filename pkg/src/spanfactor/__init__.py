"""Spanning k-edge-colorable subgraphs, [1,k]-factors and the parameter sp(G)."""

from .bounds import bound_values, factor_from_partition, lovasz_partition, yu_liu_check
from .coloring import EdgeColoring, chromatic_index, enumerate_max_k_ecs, max_k_ecs, nu_k
from .errors import GraphInputError, ParseError, PreconditionError, ResourceCapError, SpanFactorError
from .graph import (
    Multigraph,
    Subgraph,
    complete,
    cycle,
    graft,
    parse,
    path,
    prop21_tree,
    random_multigraph,
    serialize,
    star,
    tightness_graph,
)
from .matching import has_perfect_matching, maximum_matching, tutte_berge_deficiency
from .sp import (
    TheoremViolation,
    certify_sp,
    exchange_to_spanning_max,
    sp,
    sp2_bruteforce,
    sp3_bruteforce,
    sp_factor_search,
    sp_formula,
    spanning_max_exists,
)
from .trees import is_sp_delta_tree, layered_star_decomposition

__version__ = "0.1.0"

__all__ = [
    "EdgeColoring",
    "GraphInputError",
    "Multigraph",
    "ParseError",
    "PreconditionError",
    "ResourceCapError",
    "SpanFactorError",
    "Subgraph",
    "TheoremViolation",
    "bound_values",
    "certify_sp",
    "chromatic_index",
    "complete",
    "cycle",
    "enumerate_max_k_ecs",
    "exchange_to_spanning_max",
    "factor_from_partition",
    "graft",
    "has_perfect_matching",
    "is_sp_delta_tree",
    "layered_star_decomposition",
    "lovasz_partition",
    "max_k_ecs",
    "maximum_matching",
    "nu_k",
    "parse",
    "path",
    "prop21_tree",
    "random_multigraph",
    "serialize",
    "sp",
    "sp2_bruteforce",
    "sp3_bruteforce",
    "sp_factor_search",
    "sp_formula",
    "spanning_max_exists",
    "star",
    "tightness_graph",
    "tutte_berge_deficiency",
    "yu_liu_check",
]
