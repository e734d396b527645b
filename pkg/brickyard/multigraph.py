"""
Brickyard — Loopless Multigraph Core

The representation every other module works on: a vertex count n
(vertices are 0..n-1) and an ordered tuple of endpoint pairs. The index
of a pair in that tuple is its EdgeId, so two parallel edges are distinct
objects and deleting one copy is well defined.

MultiGraph values are immutable; every transform below returns a new
graph and documents how EdgeIds move:

  delete_edge     order-preserving remap (ids above e shift down by one)
  contract_shore  surviving edges keep their relative order
  bisubdivide     ids are stable; e's slot becomes the first path edge
                  and the remaining path edges are appended
  retract_ear     surviving edges keep their relative order; the new
                  edge st is appended last

Connectivity, bipartiteness and isomorphism are delegated to networkx.
Connectivity is evaluated on the underlying simple graph since parallel
edges never change vertex connectivity.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, TypeAlias

import networkx as nx

from .config import get_limits
from .errors import CapExceededError, GraphValueError

log = logging.getLogger("brickyard.multigraph")

EdgeId: TypeAlias = int
VertexSet: TypeAlias = frozenset[int]


# ── Data Types ────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class MultiGraph:
    """
    Loopless multigraph on vertices 0..n-1.

    `edges[i]` is the endpoint pair of EdgeId i. Parallel edges are
    separate entries. Loops and out-of-range endpoints are rejected at
    construction.
    """
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphValueError(f"vertex count must be nonnegative, got {self.n}")
        normalized = tuple((int(u), int(v)) for u, v in self.edges)
        for idx, (u, v) in enumerate(normalized):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphValueError(f"edge {idx} ({u}, {v}) has an endpoint outside [0, {self.n})")
            if u == v:
                raise GraphValueError(f"edge {idx} is a loop at vertex {u}")
        object.__setattr__(self, "edges", normalized)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[EdgeId, ...], ...]:
        """Incident EdgeIds per vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for idx, (u, v) in enumerate(self.edges):
            inc[u].append(idx)
            inc[v].append(idx)
        return tuple(tuple(ids) for ids in inc)

    @cached_property
    def simple(self) -> nx.Graph:
        """Underlying simple graph as a networkx Graph. Treat as read-only."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    def endpoints(self, e: EdgeId) -> tuple[int, int]:
        _check_edge(self, e)
        return self.edges[e]

    def other_end(self, e: EdgeId, v: int) -> int:
        u, w = self.endpoints(e)
        return w if u == v else u

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True, slots=True)
class Contraction:
    """Result of shrinking a shore X to a single vertex."""
    graph: MultiGraph
    edge_map: dict[EdgeId, EdgeId]      # old id -> new id, edges not inside X
    vertex_map: dict[int, int]          # old vertex -> new vertex (X maps to hub)
    hub: int                            # the contracted vertex, always n' - 1


@dataclass(frozen=True, slots=True)
class Ear:
    """
    A maximal path (or closed chain) whose internal vertices have degree
    two. `vertices` has len(edges) + 1 entries; for a closed chain the
    first and last vertex coincide.
    """
    vertices: tuple[int, ...]
    edges: tuple[EdgeId, ...]
    closed: bool = False

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def has_long_ear(self) -> bool:
        """True when the chain contains a single ear of odd length >= 3."""
        # Any 4 consecutive vertices of a closed chain are distinct only
        # when it has at least 4 edges.
        return self.length >= (4 if self.closed else 3)


# ── Validation ────────────────────────────────────────────────────────────────


def _check_vertex(G: MultiGraph, v: int) -> None:
    if not (0 <= v < G.n):
        raise GraphValueError(f"vertex {v} out of range [0, {G.n})")


def _check_edge(G: MultiGraph, e: EdgeId) -> None:
    if not (0 <= e < G.m):
        raise GraphValueError(f"EdgeId {e} out of range [0, {G.m})")


def _check_nonempty(G: MultiGraph) -> None:
    if G.n == 0:
        raise GraphValueError("graph has no vertices")


def as_vertex_set(G: MultiGraph, X: Iterable[int]) -> VertexSet:
    """Validate and freeze a vertex subset of G."""
    shore = frozenset(int(v) for v in X)
    for v in shore:
        _check_vertex(G, v)
    return shore


def _check_proper_shore(G: MultiGraph, X: Iterable[int]) -> VertexSet:
    shore = as_vertex_set(G, X)
    if not shore or len(shore) == G.n:
        raise GraphValueError(
            f"shore must be a nonempty proper subset of the {G.n} vertices, got {len(shore)}"
        )
    return shore


def shore_mask(X: Iterable[int]) -> int:
    """Bitmask of a vertex set; used for deterministic tie-breaks."""
    mask = 0
    for v in X:
        mask |= 1 << v
    return mask


# ── Construction Helpers ──────────────────────────────────────────────────────


def from_edges(n: int, edges: Iterable[Sequence[int]]) -> MultiGraph:
    return MultiGraph(n, tuple((u, v) for u, v in edges))


def from_networkx(graph: nx.Graph) -> MultiGraph:
    """
    Build a MultiGraph from a networkx (Multi)Graph. Nodes are relabeled
    0..n-1 in sorted order; edges are listed sorted by endpoints so the
    EdgeIds do not depend on networkx's adjacency order.
    """
    nodes = sorted(graph.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    pairs = sorted(
        tuple(sorted((index[u], index[v]))) for u, v in graph.edges()
    )
    return MultiGraph(len(nodes), tuple(pairs))


def to_networkx(G: MultiGraph, multigraph: bool = True) -> nx.Graph:
    """networkx view of G. With multigraph=True edge keys are EdgeIds."""
    if not multigraph:
        return G.simple.copy()
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(G.n))
    for idx, (u, v) in enumerate(G.edges):
        graph.add_edge(u, v, key=idx)
    return graph


# ── Degrees ───────────────────────────────────────────────────────────────────


def degree(G: MultiGraph, v: int) -> int:
    """Number of edge entries incident to v (multiplicity counted)."""
    _check_vertex(G, v)
    return len(G.incidence[v])


def degrees(G: MultiGraph) -> list[int]:
    return [len(ids) for ids in G.incidence]


def max_degree(G: MultiGraph) -> int:
    """Δ(G). Rejects the empty graph."""
    _check_nonempty(G)
    return max(degrees(G))


def is_simple(G: MultiGraph) -> bool:
    pairs = [tuple(sorted(edge)) for edge in G.edges]
    return len(pairs) == len(set(pairs))


def parallel_classes(G: MultiGraph) -> dict[tuple[int, int], list[EdgeId]]:
    """EdgeIds grouped by (sorted) endpoint pair, in first-seen order."""
    classes: dict[tuple[int, int], list[EdgeId]] = defaultdict(list)
    for idx, (u, v) in enumerate(G.edges):
        classes[(min(u, v), max(u, v))].append(idx)
    return dict(classes)


def parallel_pairs(G: MultiGraph) -> list[tuple[EdgeId, EdgeId]]:
    """(e1, e2) for every edge e1 that has a parallel twin; e2 is the
    lowest-numbered twin of e1."""
    pairs: list[tuple[EdgeId, EdgeId]] = []
    for ids in parallel_classes(G).values():
        if len(ids) < 2:
            continue
        for e1 in ids:
            twin = next(e for e in ids if e != e1)
            pairs.append((e1, twin))
    return sorted(pairs)


def multiplicity_index(G: MultiGraph, e: EdgeId) -> int:
    """0 for the first copy of an endpoint pair, 1 for the second, ..."""
    u, v = G.endpoints(e)
    key = (min(u, v), max(u, v))
    return sum(1 for a, b in G.edges[:e] if (min(a, b), max(a, b)) == key)


# ── Structural Transforms ─────────────────────────────────────────────────────


def deletion_map(m: int, e: EdgeId) -> dict[EdgeId, EdgeId]:
    """Order-preserving remap applied by delete_edge."""
    return {old: (old if old < e else old - 1) for old in range(m) if old != e}


def delete_edge(G: MultiGraph, e: EdgeId) -> MultiGraph:
    """G − e. EdgeIds above e shift down by one (see deletion_map)."""
    _check_edge(G, e)
    return MultiGraph(G.n, G.edges[:e] + G.edges[e + 1:])


def induced(G: MultiGraph, X: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
    """
    G[X], vertices relabeled 0..|X|-1 in increasing order.

    Returns the subgraph and the old -> new vertex mapping. Every edge
    (parallel copies included) with both ends in X is kept in id order.
    """
    shore = as_vertex_set(G, X)
    if not shore:
        raise GraphValueError("induced subgraph of an empty vertex set")
    mapping = {v: i for i, v in enumerate(sorted(shore))}
    kept = tuple(
        (mapping[u], mapping[v]) for u, v in G.edges if u in shore and v in shore
    )
    return MultiGraph(len(shore), kept), mapping


def contract_shore(G: MultiGraph, X: Iterable[int]) -> Contraction:
    """
    G/(X → x): shrink the shore X to a single vertex x.

    Vertices of X̄ are relabeled 0..|X̄|-1 in increasing order and x is
    the last vertex. Edges inside X are dropped (they would become
    loops); every other edge survives, parallel copies included.
    """
    shore = _check_proper_shore(G, X)
    outside = [v for v in range(G.n) if v not in shore]
    hub = len(outside)
    vertex_map = {v: i for i, v in enumerate(outside)}
    for v in shore:
        vertex_map[v] = hub

    new_edges: list[tuple[int, int]] = []
    edge_map: dict[EdgeId, EdgeId] = {}
    for idx, (u, v) in enumerate(G.edges):
        if u in shore and v in shore:
            continue
        edge_map[idx] = len(new_edges)
        new_edges.append((vertex_map[u], vertex_map[v]))

    return Contraction(
        graph=MultiGraph(hub + 1, tuple(new_edges)),
        edge_map=edge_map,
        vertex_map=vertex_map,
        hub=hub,
    )


def underlying_simple(G: MultiGraph) -> MultiGraph:
    """One edge per adjacent pair, listed in sorted endpoint order."""
    pairs = sorted({(min(u, v), max(u, v)) for u, v in G.edges})
    return MultiGraph(G.n, tuple(pairs))


def bisubdivide(G: MultiGraph, e: EdgeId, length: int) -> MultiGraph:
    """
    Replace e = uv by an odd path of the given length (>= 3).

    length − 1 new vertices n, n+1, ... are appended. EdgeIds are stable:
    e's slot becomes the path edge at u, the other length − 1 path edges
    are appended, so every edge f ≠ e keeps its id.
    """
    _check_edge(G, e)
    if length < 3 or length % 2 == 0:
        raise GraphValueError(f"bisubdivision length must be odd and >= 3, got {length}")
    u, v = G.edges[e]
    path = [u, *range(G.n, G.n + length - 1), v]
    edges = list(G.edges)
    edges[e] = (path[0], path[1])
    edges.extend((path[i], path[i + 1]) for i in range(1, length))
    return MultiGraph(G.n + length - 1, tuple(edges))


def subdivision_ear(G: MultiGraph, e: EdgeId, length: int) -> Ear:
    """The ear created by bisubdivide(G, e, length), in the new graph's ids."""
    _check_edge(G, e)
    u, v = G.edges[e]
    vertices = (u, *range(G.n, G.n + length - 1), v)
    edge_ids = (e, *range(G.m, G.m + length - 1))
    return Ear(vertices=vertices, edges=edge_ids, closed=False)


# ── Ears ──────────────────────────────────────────────────────────────────────


def find_single_ears(G: MultiGraph) -> list[Ear]:
    """
    Every maximal chain whose internal vertices have degree two.

    Chains start and end at vertices of degree other than two. Components
    in which every vertex has degree two are reported as closed chains
    rooted at their smallest vertex. Each Ear tells, through
    `has_long_ear`, whether it contains a single ear of length >= 3.
    """
    deg = degrees(G)
    inc = G.incidence
    seen: set[EdgeId] = set()
    ears: list[Ear] = []

    def walk(start: int, first: EdgeId) -> Ear:
        verts = [start]
        eds = [first]
        prev = first
        cur = G.other_end(first, start)
        while deg[cur] == 2 and cur != start:
            verts.append(cur)
            nxt = inc[cur][0] if inc[cur][0] != prev else inc[cur][1]
            eds.append(nxt)
            prev = nxt
            cur = G.other_end(nxt, cur)
        verts.append(cur)
        return Ear(vertices=tuple(verts), edges=tuple(eds), closed=cur == start)

    for s in range(G.n):
        if deg[s] == 2:
            continue
        for e0 in inc[s]:
            if e0 in seen:
                continue
            ear = walk(s, e0)
            seen.update(ear.edges)
            if not ear.closed and ear.vertices[0] > ear.vertices[-1]:
                ear = Ear(ear.vertices[::-1], ear.edges[::-1], False)
            ears.append(ear)

    # Cycle components: every vertex has degree two.
    for s in range(G.n):
        if deg[s] != 2 or inc[s][0] in seen:
            continue
        verts = [s]
        eds = [inc[s][0]]
        cur = G.other_end(inc[s][0], s)
        prev = inc[s][0]
        while cur != s:
            verts.append(cur)
            nxt = inc[cur][0] if inc[cur][0] != prev else inc[cur][1]
            eds.append(nxt)
            prev = nxt
            cur = G.other_end(nxt, cur)
        verts.append(s)
        seen.update(eds)
        ears.append(Ear(vertices=tuple(verts), edges=tuple(eds), closed=True))

    log.debug(f"> MULTIGRAPH: {len(ears)} chain(s) in {G!r}")
    return ears


def _check_single_ear(G: MultiGraph, ear: Ear) -> None:
    if ear.closed:
        raise GraphValueError("a closed chain is not a single ear")
    if ear.length < 3 or ear.length % 2 == 0:
        raise GraphValueError(f"ear must have odd length >= 3, got {ear.length}")
    if len(ear.vertices) != ear.length + 1:
        raise GraphValueError("ear vertex and edge sequences disagree")
    if len(set(ear.vertices)) != len(ear.vertices):
        raise GraphValueError("ear repeats a vertex")
    for i, e in enumerate(ear.edges):
        _check_edge(G, e)
        a, b = ear.vertices[i], ear.vertices[i + 1]
        if {a, b} != set(G.edges[e]):
            raise GraphValueError(f"EdgeId {e} does not join {a} and {b}")
    for v in ear.interior:
        if degree(G, v) != 2:
            raise GraphValueError(f"ear interior vertex {v} has degree {degree(G, v)}")


def retraction_edge_map(G: MultiGraph, ear: Ear) -> tuple[dict[EdgeId, EdgeId], EdgeId]:
    """Old -> new EdgeIds for the edges surviving retract_ear, and the id
    of the new edge st."""
    _check_single_ear(G, ear)
    dropped = set(ear.edges)
    mapping: dict[EdgeId, EdgeId] = {}
    for idx in range(G.m):
        if idx not in dropped:
            mapping[idx] = len(mapping)
    return mapping, len(mapping)


def retract_ear(G: MultiGraph, ear: Ear) -> MultiGraph:
    """
    Replace a single ear of odd length >= 3 with ends s, t by one new
    edge st. Interior vertices are removed; surviving vertices and edges
    keep their relative order and st is appended last, so bisubdividing
    st again reproduces G up to isomorphism.
    """
    _check_single_ear(G, ear)
    removed = set(ear.interior)
    dropped = set(ear.edges)
    vertex_map: dict[int, int] = {}
    for v in range(G.n):
        if v not in removed:
            vertex_map[v] = len(vertex_map)
    kept = [
        (vertex_map[u], vertex_map[v])
        for idx, (u, v) in enumerate(G.edges)
        if idx not in dropped
    ]
    s, t = ear.ends
    kept.append((vertex_map[s], vertex_map[t]))
    return MultiGraph(len(vertex_map), tuple(kept))


# ── Global Properties (networkx) ──────────────────────────────────────────────


def is_connected(G: MultiGraph) -> bool:
    return G.n > 0 and nx.is_connected(G.simple)


def is_k_connected(G: MultiGraph, k: int) -> bool:
    """
    Vertex connectivity >= k on the underlying simple graph, for
    k in {1, 2, 3}. A graph needs more than k vertices; complete graphs
    K_{k+1} qualify (networkx reports n − 1 for complete graphs).
    """
    if k not in (1, 2, 3):
        raise GraphValueError(f"k must be 1, 2 or 3, got {k}")
    if G.n <= k:
        return False
    if not nx.is_connected(G.simple):
        return False
    if k == 1:
        return True
    return nx.node_connectivity(G.simple) >= k


def is_bipartite(G: MultiGraph) -> tuple[bool, dict[int, int] | None]:
    """(True, 2-colouring) or (False, None)."""
    if not nx.is_bipartite(G.simple):
        return False, None
    return True, dict(nx.bipartite.color(G.simple))


def _check_iso_cap(G: MultiGraph, max_n: int) -> None:
    if G.n > max_n:
        raise CapExceededError("isomorphism", max_n, G.n)


def _multiplicity_profile(G: MultiGraph) -> list[int]:
    return sorted(Counter((min(u, v), max(u, v)) for u, v in G.edges).values())


def are_isomorphic(G: MultiGraph, H: MultiGraph, max_n: int | None = None) -> bool:
    """
    True iff some vertex bijection preserves adjacency with multiplicity.

    Degree sequences and multiplicity profiles are compared first; the
    exact test is networkx's VF2 backtracking on MultiGraphs, which
    compares edge counts between matched pairs.
    """
    cap = max_n if max_n is not None else get_limits().max_n
    _check_iso_cap(G, cap)
    _check_iso_cap(H, cap)
    if G.n != H.n or G.m != H.m:
        return False
    if sorted(degrees(G)) != sorted(degrees(H)):
        return False
    if _multiplicity_profile(G) != _multiplicity_profile(H):
        return False
    return nx.is_isomorphic(to_networkx(G), to_networkx(H))
