"""
Brickyard — Graph Classification

Brick / brace / near-brick / irreducible predicates, the GraphClass flag
record, named reference graphs, and the search for cubic bricks on eight
vertices with exactly one removable edge.

The brick test uses the Edmonds–Lovász–Pulleyblank characterisation
(3-connected and bicritical) as the primary method; the definitional
test (matching covered, nonbipartite, no nontrivial tight cut) is kept as
the cross-check.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Iterable, Literal

import networkx as nx

from .errors import GraphValueError
from .matching import is_bicritical, is_matching_covered, removable_edges
from .multigraph import (
    MultiGraph,
    bisubdivide,
    degrees,
    find_single_ears,
    from_edges,
    from_networkx,
    is_bipartite,
    is_k_connected,
    is_simple,
)
from .tightcuts import brick_count, find_nontrivial_tight_cut

log = logging.getLogger("brickyard.classify")


# ── Classification ────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class GraphClass:
    """Classification flags of one graph."""
    matching_covered: bool
    brick: bool
    brace: bool
    near_brick: bool
    irreducible: bool
    bipartite: bool

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _is_brick_definition(G: MultiGraph) -> bool:
    if not is_matching_covered(G):
        return False
    if is_bipartite(G)[0]:
        return False
    return find_nontrivial_tight_cut(G) is None


def is_brick(G: MultiGraph, method: Literal["elp", "definition"] = "elp") -> bool:
    """
    Brick test. "elp": even order >= 4, 3-connected and bicritical.
    "definition": matching covered, nonbipartite, free of nontrivial tight
    cuts. The two agree on every graph.
    """
    if method == "definition":
        return _is_brick_definition(G)
    if G.n < 4 or G.n % 2:
        return False
    return is_k_connected(G, 3) and is_bicritical(G)


def is_brace(G: MultiGraph) -> bool:
    """Bipartite matching covered graph free of nontrivial tight cuts."""
    if not is_matching_covered(G):
        return False
    if not is_bipartite(G)[0]:
        return False
    return find_nontrivial_tight_cut(G) is None


def has_adjacent_degree_two(G: MultiGraph) -> bool:
    deg = degrees(G)
    return any(deg[u] == 2 and deg[v] == 2 for u, v in G.edges)


def is_irreducible(G: MultiGraph, method: Literal["auto", "ears"] = "auto") -> bool:
    """
    No single ear of length >= 3.

    "ears" runs the chain search. "auto" uses the adjacent-degree-two
    shortcut on 2-connected graphs with at least four vertices, where the
    two coincide, and falls back to the chain search elsewhere.
    """
    if method == "auto" and G.n >= 4 and is_k_connected(G, 2):
        return not has_adjacent_degree_two(G)
    return not any(ear.has_long_ear for ear in find_single_ears(G))


def classify(G: MultiGraph) -> GraphClass:
    """All classification flags of G."""
    bipartite = is_bipartite(G)[0]
    if not is_matching_covered(G):
        return GraphClass(
            matching_covered=False,
            brick=False,
            brace=False,
            near_brick=False,
            irreducible=is_irreducible(G),
            bipartite=bipartite,
        )
    free_of_tight_cuts = find_nontrivial_tight_cut(G) is None
    return GraphClass(
        matching_covered=True,
        brick=free_of_tight_cuts and not bipartite,
        brace=free_of_tight_cuts and bipartite,
        near_brick=brick_count(G) == 1,
        irreducible=is_irreducible(G),
        bipartite=bipartite,
    )


# ── Named Graphs ──────────────────────────────────────────────────────────────


class GraphName(str, Enum):
    K2 = "K2"
    C4 = "C4"
    C6 = "C6"
    K4 = "K4"
    C6_BAR = "C6_BAR"
    K33 = "K33"
    CYCLE = "CYCLE"
    PRISM = "PRISM"
    CUBE = "CUBE"
    WAGNER = "WAGNER"
    PETERSEN = "PETERSEN"


def _cycle(order: int) -> MultiGraph:
    return from_edges(order, [(i, (i + 1) % order) for i in range(order)])


def _complement_of_c6() -> MultiGraph:
    c6 = {frozenset((i, (i + 1) % 6)) for i in range(6)}
    return from_edges(6, [(u, v) for u, v in combinations(range(6), 2) if frozenset((u, v)) not in c6])


def named_graph(name: str | GraphName, order: int | None = None) -> MultiGraph:
    """
    Canonical labeled constructions. CYCLE takes its (even) order;
    C6_BAR is built as the complement of the 6-cycle, PRISM as two
    triangles joined by a perfect matching.
    """
    try:
        key = GraphName(name.upper() if isinstance(name, str) else name)
    except ValueError:
        raise GraphValueError(f"unknown graph name {name!r}") from None

    if key is GraphName.K2:
        return from_edges(2, [(0, 1)])
    if key is GraphName.C4:
        return _cycle(4)
    if key is GraphName.C6:
        return _cycle(6)
    if key is GraphName.K4:
        return from_edges(4, combinations(range(4), 2))
    if key is GraphName.C6_BAR:
        return _complement_of_c6()
    if key is GraphName.K33:
        return from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
    if key is GraphName.CYCLE:
        if order is None or order < 4 or order % 2:
            raise GraphValueError(f"CYCLE needs an even order >= 4, got {order}")
        return _cycle(order)
    if key is GraphName.PRISM:
        return from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    if key is GraphName.CUBE:
        return from_networkx(nx.hypercube_graph(3))
    if key is GraphName.WAGNER:
        return from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])
    return from_networkx(nx.petersen_graph())


def non_irreducible_witness() -> MultiGraph:
    """
    K4 with edge 01 doubled and the second copy bisubdivided by a path of
    length three: a near-brick with Δ = 4 that is not irreducible and has
    exactly one removable edge (the surviving copy of 01).
    """
    k4 = named_graph(GraphName.K4)
    doubled = MultiGraph(k4.n, k4.edges + (k4.edges[0],))
    return bisubdivide(doubled, doubled.m - 1, 3)


# ── R8 Search ─────────────────────────────────────────────────────────────────


def _is_cubic(G: MultiGraph) -> bool:
    return all(d == 3 for d in degrees(G))


def find_r8_candidates(corpus: Iterable[MultiGraph]) -> list[MultiGraph]:
    """Cubic simple bricks on eight vertices with exactly one removable edge."""
    found: list[MultiGraph] = []
    for G in corpus:
        if G.n != 8 or not is_simple(G) or not _is_cubic(G):
            continue
        if not is_brick(G):
            continue
        if len(removable_edges(G)) == 1:
            found.append(G)
    log.info(f"> CLASSIFY: {len(found)} cubic brick(s) on 8 vertices with one removable edge")
    return found
