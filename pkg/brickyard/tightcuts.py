"""
Brickyard — Tight Cut Machinery

Cut construction, certified tightness, the exhaustive nontrivial tight
cut scan, tight cut decomposition and the brick count b(G).

Tightness is certified without enumerating perfect matchings. For an odd
shore X every perfect matching meets ∂(X) an odd number of times, so the
cut is tight unless some perfect matching contains two cut edges, i.e.
unless G minus the ends of two vertex-disjoint cut edges still has a
perfect matching. Even shores are never tight.

Selection rule of the scan (reproducible decomposition trees):
  1. among tight cuts with a bipartite shore, the smallest bipartite
     shore wins, ties by the smallest shore bitmask;
  2. otherwise the smallest odd shore, same tie-break.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Iterable, Iterator

import networkx as nx

from .config import get_limits
from .errors import CapExceededError, GraphValueError, NotMatchingCoveredError
from .matching import has_pm_avoiding, is_matching_covered
from .multigraph import (
    Contraction,
    EdgeId,
    MultiGraph,
    VertexSet,
    as_vertex_set,
    contract_shore,
    is_bipartite,
    shore_mask,
)

log = logging.getLogger("brickyard.tightcuts")


# ── Data Types ────────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class Cut:
    """A shore X of G together with ∂(X)."""
    n: int
    shore: VertexSet
    edges: frozenset[EdgeId]

    @property
    def complement(self) -> VertexSet:
        return frozenset(range(self.n)) - self.shore

    @property
    def is_trivial(self) -> bool:
        return len(self.shore) == 1 or len(self.shore) == self.n - 1

    @property
    def mask(self) -> int:
        return shore_mask(self.shore)


class LeafKind(str, Enum):
    BRICK = "brick"
    BRACE = "brace"
    NONE = "none"           # internal node


@dataclass
class DecompositionNode:
    """
    One node of a tight cut decomposition. Internal nodes carry the
    splitting cut and two children, G/X then G/X̄; leaves carry no cut
    and are bricks or braces.
    """
    graph: MultiGraph
    split: Cut | None = None
    children: tuple["DecompositionNode", ...] = ()
    leaf_kind: LeafKind = LeafKind.NONE
    hubs: tuple[int, ...] = field(default_factory=tuple)

    @property
    def is_leaf(self) -> bool:
        return self.split is None

    def to_dict(self) -> dict[str, Any]:
        node: dict[str, Any] = {
            "n": self.graph.n,
            "m": self.graph.m,
            "kind": self.leaf_kind.value,
        }
        if self.split is not None:
            node["shore"] = sorted(self.split.shore)
            node["cut"] = sorted(self.split.edges)
            node["children"] = [child.to_dict() for child in self.children]
        return node


# ── Cuts ──────────────────────────────────────────────────────────────────────


def cut_of(G: MultiGraph, X: Iterable[int]) -> Cut:
    """∂(X) for a nonempty proper shore X."""
    shore = as_vertex_set(G, X)
    if not shore or len(shore) == G.n:
        raise GraphValueError(
            f"shore must be a nonempty proper subset of the {G.n} vertices, got {len(shore)}"
        )
    edges = frozenset(
        idx for idx, (u, v) in enumerate(G.edges) if (u in shore) != (v in shore)
    )
    return Cut(n=G.n, shore=shore, edges=edges)


def _require_matching_covered(G: MultiGraph) -> None:
    if not is_matching_covered(G):
        raise NotMatchingCoveredError(f"{G!r} is not matching covered")


def _is_tight_unchecked(G: MultiGraph, C: Cut) -> bool:
    if len(C.shore) % 2 == 0:
        return False
    cut_edges = sorted(C.edges)
    for e, f in combinations(cut_edges, 2):
        ends = set(G.edges[e]) | set(G.edges[f])
        if len(ends) < 4:
            continue
        if has_pm_avoiding(G, ends):
            log.debug(f"> TIGHTCUTS: edges {e},{f} of ∂({sorted(C.shore)}) share a perfect matching")
            return False
    return True


def is_tight(G: MultiGraph, C: Cut) -> bool:
    """Every perfect matching of G meets C exactly once."""
    _require_matching_covered(G)
    return _is_tight_unchecked(G, C)


def is_tight_by_enumeration(G: MultiGraph, C: Cut, max_n: int | None = None) -> bool:
    """Oracle form of is_tight."""
    from .matching import enumerate_perfect_matchings

    _require_matching_covered(G)
    return all(
        len(C.edges.intersection(matching)) == 1
        for matching in enumerate_perfect_matchings(G, max_n=max_n)
    )


def contractions(G: MultiGraph, C: Cut) -> tuple[Contraction, Contraction]:
    """The two C-contractions: (G/X, G/X̄)."""
    return contract_shore(G, C.shore), contract_shore(G, C.complement)


# ── Nontrivial Tight Cut Scan ─────────────────────────────────────────────────


def _check_scan_cap(G: MultiGraph, max_n: int | None) -> None:
    cap = max_n if max_n is not None else get_limits().max_n
    if G.n > cap:
        raise CapExceededError("tight-cut shore scan", cap, G.n)


def _candidate_shores(n: int) -> Iterator[VertexSet]:
    """Odd shores with 3 <= |X| <= n-3, by (size, bitmask)."""
    for size in range(3, n - 2, 2):
        for combo in sorted(combinations(range(n), size), key=shore_mask):
            yield frozenset(combo)


def _shore_is_bipartite(G: MultiGraph, shore: VertexSet) -> bool:
    return nx.is_bipartite(G.simple.subgraph(shore))


def _find_nontrivial_tight_cut(G: MultiGraph) -> Cut | None:
    if G.n < 6 or G.n % 2:
        return None
    shores = list(_candidate_shores(G.n))
    log.debug(f"> TIGHTCUTS: scanning {len(shores)} shores (n={G.n})")
    # One pass: a bipartite tight shore wins outright; the first tight
    # non-bipartite shore is kept as the fallback. Each shore is tested once.
    fallback: Cut | None = None
    for shore in shores:
        bipartite = _shore_is_bipartite(G, shore)
        if not bipartite and fallback is not None:
            continue
        cut = cut_of(G, shore)
        if _is_tight_unchecked(G, cut):
            if bipartite:
                return cut
            fallback = cut
    return fallback


def find_nontrivial_tight_cut(G: MultiGraph, max_n: int | None = None) -> Cut | None:
    """
    A nontrivial tight cut of G, or None when G is a brick or a brace.

    The returned cut's shore is the selected one: the smallest bipartite
    shore when some tight cut has one, else the smallest odd shore
    (ties by bitmask).
    """
    _check_scan_cap(G, max_n)
    _require_matching_covered(G)
    return _find_nontrivial_tight_cut(G)


def all_nontrivial_tight_cuts(G: MultiGraph, max_n: int | None = None) -> list[Cut]:
    """Every nontrivial tight cut, once per {X, X̄}, shore containing 0."""
    _check_scan_cap(G, max_n)
    _require_matching_covered(G)
    cuts: list[Cut] = []
    if G.n < 6:
        return cuts
    for shore in _candidate_shores(G.n):
        if 0 not in shore:
            continue
        cut = cut_of(G, shore)
        if _is_tight_unchecked(G, cut):
            cuts.append(cut)
    return cuts


# ── Decomposition ─────────────────────────────────────────────────────────────


def _leaf(G: MultiGraph) -> DecompositionNode:
    bipartite, _ = is_bipartite(G)
    return DecompositionNode(graph=G, leaf_kind=LeafKind.BRACE if bipartite else LeafKind.BRICK)


def _decompose(G: MultiGraph, cut: Cut | None) -> DecompositionNode:
    if cut is None:
        cut = _find_nontrivial_tight_cut(G)
    if cut is None:
        return _leaf(G)
    shrink_x, shrink_xbar = contractions(G, cut)
    children = (_decompose(shrink_x.graph, None), _decompose(shrink_xbar.graph, None))
    return DecompositionNode(
        graph=G,
        split=cut,
        children=children,
        hubs=(shrink_x.hub, shrink_xbar.hub),
    )


def tight_cut_decomposition(
    G: MultiGraph,
    first_cut: Cut | None = None,
    max_n: int | None = None,
) -> DecompositionNode:
    """
    Recursively contract nontrivial tight cuts until every leaf is a brick
    or a brace. `first_cut` forces the top-level split; it must be a
    nontrivial tight cut of G.
    """
    _check_scan_cap(G, max_n)
    _require_matching_covered(G)
    if first_cut is not None:
        if first_cut.n != G.n or first_cut.is_trivial or not _is_tight_unchecked(G, first_cut):
            raise GraphValueError("first_cut is not a nontrivial tight cut of this graph")
    tree = _decompose(G, first_cut)
    log.debug(f"> TIGHTCUTS: decomposed {G!r} into {sum(1 for _ in leaves(tree))} leaves")
    return tree


def leaves(node: DecompositionNode) -> Iterator[DecompositionNode]:
    if node.is_leaf:
        yield node
        return
    for child in node.children:
        yield from leaves(child)


def brick_count(G: MultiGraph, max_n: int | None = None) -> int:
    """b(G): number of brick leaves of a tight cut decomposition."""
    tree = tight_cut_decomposition(G, max_n=max_n)
    return sum(1 for leaf in leaves(tree) if leaf.leaf_kind is LeafKind.BRICK)


def is_near_brick(G: MultiGraph, max_n: int | None = None) -> bool:
    """Matching covered with b(G) = 1."""
    if not is_matching_covered(G):
        return False
    return brick_count(G, max_n=max_n) == 1
