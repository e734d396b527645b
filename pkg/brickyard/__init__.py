"""Brickyard: removable edges, tight cuts and brick decompositions of matching covered graphs."""

from .multigraph import MultiGraph, bisubdivide, from_edges
from .matching import is_matching_covered, removable_edges
from .tightcuts import brick_count, find_nontrivial_tight_cut, tight_cut_decomposition
from .classify import classify, is_brick, is_irreducible, named_graph
from .theorems import run_lemma_suite, verify_theorem1, verify_theorem2

__all__ = [
    "MultiGraph",
    "bisubdivide",
    "brick_count",
    "classify",
    "find_nontrivial_tight_cut",
    "from_edges",
    "is_brick",
    "is_irreducible",
    "is_matching_covered",
    "named_graph",
    "removable_edges",
    "run_lemma_suite",
    "tight_cut_decomposition",
    "verify_theorem1",
    "verify_theorem2",
]
