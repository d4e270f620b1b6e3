"""geodex: exact transitivity, primitivity and normal-quotient analysis
for finite graphs with explicit permutation groups."""

from .atlas import atlas_get, atlas_list
from .errors import GeodexError
from .graph import Graph, build_graph, diameter, girth, intersection_array
from .perm import Permutation, PermGroup, build_group
from .quotient import normal_quotient, verify_reduction
from .symmetry import (
    are_isomorphic,
    automorphism_group,
    bi_analysis,
    transitivity_degrees,
)

__all__ = [
    "GeodexError",
    "Graph",
    "PermGroup",
    "Permutation",
    "are_isomorphic",
    "atlas_get",
    "atlas_list",
    "automorphism_group",
    "bi_analysis",
    "build_graph",
    "build_group",
    "diameter",
    "girth",
    "intersection_array",
    "normal_quotient",
    "transitivity_degrees",
    "verify_reduction",
]

__version__ = "0.1.0"
