"""
Brickyard — Perfect Matching Engine

Existence, enumeration, matching-covered test, removable edges and
bicriticality.

Existence is decided on the underlying simple graph (parallel copies
never change whether a perfect matching exists) with networkx's Edmonds
blossom implementation. An independent backtracking search is kept as
the oracle; both must agree on every corpus graph.

Removability works on identified edges: deleting one copy of a parallel
pair leaves its twin in place, which is exactly what makes every multiple
edge of a matching covered graph removable.
"""

from __future__ import annotations

import logging
from typing import Iterable, Literal, TypeAlias

import networkx as nx

from .config import get_limits
from .errors import CapExceededError, NotMatchingCoveredError
from .multigraph import (
    EdgeId,
    MultiGraph,
    as_vertex_set,
    delete_edge,
    is_connected,
    parallel_classes,
)

log = logging.getLogger("brickyard.matching")

PerfectMatching: TypeAlias = tuple[EdgeId, ...]     # sorted EdgeIds
RemovableEdgeSet: TypeAlias = frozenset[EdgeId]

MatchingMethod = Literal["blossom", "backtrack"]


# ── Existence ─────────────────────────────────────────────────────────────────


def _blossom_has_pm(graph: nx.Graph) -> bool:
    order = graph.number_of_nodes()
    if order % 2:
        return False
    if order == 0:
        return True
    if any(d == 0 for _, d in graph.degree()):
        return False
    mate = nx.max_weight_matching(graph, maxcardinality=True)
    return 2 * len(mate) == order


def _backtrack_has_pm(adjacency: dict[int, set[int]]) -> bool:
    """Exhaustive search: match the lowest free vertex every way possible."""
    if len(adjacency) % 2:
        return False

    free = set(adjacency)

    def search() -> bool:
        if not free:
            return True
        v = min(free)
        free.discard(v)
        for w in sorted(adjacency[v]):
            if w in free:
                free.discard(w)
                if search():
                    return True
                free.add(w)
        free.add(v)
        return False

    return search()


def has_pm_avoiding(
    G: MultiGraph,
    S: Iterable[int],
    method: MatchingMethod = "blossom",
) -> bool:
    """True iff G − S has a perfect matching. G − V(G) trivially does."""
    removed = as_vertex_set(G, S)
    keep = [v for v in range(G.n) if v not in removed]
    if len(keep) % 2:
        return False
    if method == "backtrack":
        keep_set = set(keep)
        adjacency = {v: set(G.simple[v]) & keep_set for v in keep}
        return _backtrack_has_pm(adjacency)
    return _blossom_has_pm(G.simple.subgraph(keep))


def has_perfect_matching(G: MultiGraph, method: MatchingMethod = "blossom") -> bool:
    """Exact perfect-matching existence. Odd order returns False."""
    return has_pm_avoiding(G, (), method=method)


def is_bicritical(G: MultiGraph) -> bool:
    """G − x − y has a perfect matching for every pair of distinct vertices."""
    if G.n < 2 or G.n % 2:
        return False
    for x in range(G.n):
        for y in range(x + 1, G.n):
            if not has_pm_avoiding(G, (x, y)):
                log.debug(f"> MATCHING: G−{x}−{y} has no perfect matching")
                return False
    return True


# ── Enumeration (oracle) ──────────────────────────────────────────────────────


def enumerate_perfect_matchings(
    G: MultiGraph,
    max_n: int | None = None,
) -> list[PerfectMatching]:
    """
    Every perfect matching of G as a sorted tuple of EdgeIds, the list in
    lexicographic order. Parallel copies give distinct matchings.

    Raises CapExceededError above the enumeration cap; the list is never
    truncated.
    """
    cap = max_n if max_n is not None else get_limits().max_pm_enum
    if G.n > cap:
        raise CapExceededError("perfect-matching enumeration", cap, G.n)
    if G.n % 2:
        return []

    inc = G.incidence
    covered = [False] * G.n
    chosen: list[EdgeId] = []
    found: list[PerfectMatching] = []

    def extend(start: int) -> None:
        v = start
        while v < G.n and covered[v]:
            v += 1
        if v == G.n:
            found.append(tuple(sorted(chosen)))
            return
        covered[v] = True
        for e in inc[v]:
            w = G.other_end(e, v)
            if covered[w]:
                continue
            covered[w] = True
            chosen.append(e)
            extend(v + 1)
            chosen.pop()
            covered[w] = False
        covered[v] = False

    extend(0)
    found.sort()
    return found


def covered_edges(G: MultiGraph, matchings: Iterable[PerfectMatching]) -> frozenset[EdgeId]:
    """EdgeIds lying in at least one of the given matchings."""
    return frozenset(e for matching in matchings for e in matching)


def is_matching_covered_by_enumeration(G: MultiGraph, max_n: int | None = None) -> bool:
    """Oracle form of is_matching_covered."""
    if G.n < 2 or not is_connected(G):
        return False
    matchings = enumerate_perfect_matchings(G, max_n=max_n)
    return covered_edges(G, matchings) == frozenset(range(G.m))


def removable_edges_by_enumeration(G: MultiGraph, max_n: int | None = None) -> RemovableEdgeSet:
    """Oracle form of removable_edges: delete each edge and re-enumerate."""
    _require_matching_covered(G)
    return frozenset(
        e for e in range(G.m)
        if is_matching_covered_by_enumeration(delete_edge(G, e), max_n=max_n)
    )


# ── Matching Covered / Removable ──────────────────────────────────────────────


def is_matching_covered(G: MultiGraph) -> bool:
    """
    Connected, at least two vertices, and every edge uv lies in a perfect
    matching, i.e. G − u − v has one. Parallel copies share the answer.
    """
    if G.n < 2 or G.n % 2 or G.m == 0:
        return False
    if not is_connected(G):
        return False
    for u, v in parallel_classes(G):
        if not has_pm_avoiding(G, (u, v)):
            log.debug(f"> MATCHING: edge {u}-{v} lies in no perfect matching")
            return False
    return True


def _require_matching_covered(G: MultiGraph) -> None:
    if not is_matching_covered(G):
        raise NotMatchingCoveredError(f"{G!r} is not matching covered")


def is_removable(G: MultiGraph, e: EdgeId) -> bool:
    """G − e is matching covered. G itself must be matching covered."""
    _require_matching_covered(G)
    return is_matching_covered(delete_edge(G, e))


def removable_edges(G: MultiGraph) -> RemovableEdgeSet:
    """
    RE(G). Every copy of a multiple edge is removable outright, since its
    twin keeps each perfect matching available; the remaining edges are
    deleted and re-tested one by one.
    """
    _require_matching_covered(G)
    result: set[EdgeId] = set()
    for ids in parallel_classes(G).values():
        if len(ids) > 1:
            result.update(ids)
            continue
        e = ids[0]
        if is_matching_covered(delete_edge(G, e)):
            result.add(e)
    log.debug(f"> MATCHING: |RE|={len(result)} for {G!r}")
    return frozenset(result)
