"""
Brickyard — Theorem & Lemma Harness

Executable checks of the Δ−2 removable-edge bounds for bricks and for
irreducible near-bricks, the supporting lemma suite, and the search for
extremal witnesses. Harness functions never raise on a violation: they
record it, with a replayable sparse6 encoding of the offending graph.

Only size caps propagate as exceptions (CapExceededError).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Any, Iterable, Sequence, TypeAlias

from .classify import GraphName, is_brace, is_brick, is_irreducible, named_graph
from .config import Limits, get_limits
from .graphio import to_sparse6
from .matching import is_matching_covered, removable_edges
from .multigraph import (
    EdgeId,
    Ear,
    MultiGraph,
    are_isomorphic,
    bisubdivide,
    delete_edge,
    deletion_map,
    find_single_ears,
    from_edges,
    induced,
    is_bipartite,
    is_k_connected,
    is_simple,
    max_degree,
    parallel_pairs,
    retract_ear,
    retraction_edge_map,
    underlying_simple,
)
from .tightcuts import (
    Cut,
    DecompositionNode,
    LeafKind,
    all_nontrivial_tight_cuts,
    brick_count,
    contractions,
    cut_of,
    leaves,
    tight_cut_decomposition,
)

log = logging.getLogger("brickyard.theorems")

CorpusEntry: TypeAlias = tuple[str, MultiGraph]


def as_corpus(corpus: Iterable[MultiGraph | CorpusEntry]) -> list[CorpusEntry]:
    """Normalise a corpus to (graph_id, graph) pairs; bare graphs get "#i"."""
    entries: list[CorpusEntry] = []
    for idx, item in enumerate(corpus):
        if isinstance(item, MultiGraph):
            entries.append((f"#{idx}", item))
        else:
            graph_id, G = item
            entries.append((str(graph_id), G))
    return entries


# ── Theorem Verdicts ──────────────────────────────────────────────────────────


class HypothesisFailure(str, Enum):
    NOT_MATCHING_COVERED = "not-matching-covered"
    NOT_NEAR_BRICK = "not-near-brick"
    NOT_BRICK = "not-brick"
    NOT_IRREDUCIBLE = "not-irreducible"
    IS_K4 = "is-K4"
    IS_C6_BAR = "is-C6-bar"


@dataclass
class TheoremVerdict:
    graph_id: str
    theorem: int
    hypothesis_holds: bool
    hypothesis_failures: list[HypothesisFailure]
    delta: int
    removable_count: int | None
    bound: int
    satisfied: bool | None      # None unless the hypothesis holds

    @property
    def violated(self) -> bool:
        return self.satisfied is False

    def to_dict(self) -> dict[str, Any]:
        return {
            "graph_id": self.graph_id,
            "theorem": self.theorem,
            "hypothesis_holds": self.hypothesis_holds,
            "hypothesis_failures": [f.value for f in self.hypothesis_failures],
            "delta": self.delta,
            "removable_count": self.removable_count,
            "bound": self.bound,
            "satisfied": self.satisfied,
        }


@lru_cache(maxsize=None)
def _exceptional(name: GraphName) -> MultiGraph:
    return named_graph(name)


def _exclusions(G: MultiGraph) -> list[HypothesisFailure]:
    # Only simple graphs are excluded; a multigraph over K4 is a valid input.
    if not is_simple(G):
        return []
    if G.n == 4 and are_isomorphic(G, _exceptional(GraphName.K4)):
        return [HypothesisFailure.IS_K4]
    if G.n == 6 and are_isomorphic(G, _exceptional(GraphName.C6_BAR)):
        return [HypothesisFailure.IS_C6_BAR]
    return []


def _verdict(
    G: MultiGraph,
    graph_id: str,
    theorem: int,
    failures: list[HypothesisFailure],
    removable_count: int | None,
) -> TheoremVerdict:
    delta = max_degree(G)
    bound = delta - 2
    holds = not failures
    satisfied = removable_count >= max(bound, 0) if holds and removable_count is not None else None
    verdict = TheoremVerdict(
        graph_id=graph_id,
        theorem=theorem,
        hypothesis_holds=holds,
        hypothesis_failures=failures,
        delta=delta,
        removable_count=removable_count,
        bound=bound,
        satisfied=satisfied,
    )
    if verdict.violated:
        log.error(f"> THEOREMS: theorem {theorem} violated by {graph_id}: |RE|={removable_count} < {bound}")
    return verdict


def verify_theorem2(G: MultiGraph, graph_id: str = "") -> TheoremVerdict:
    """Irreducible near-bricks other than K4 and C6-bar have |RE| >= Δ−2."""
    if not is_matching_covered(G):
        return _verdict(G, graph_id, 2, [HypothesisFailure.NOT_MATCHING_COVERED], None)
    failures: list[HypothesisFailure] = []
    if brick_count(G) != 1:
        failures.append(HypothesisFailure.NOT_NEAR_BRICK)
    if not is_irreducible(G):
        failures.append(HypothesisFailure.NOT_IRREDUCIBLE)
    failures.extend(_exclusions(G))
    return _verdict(G, graph_id, 2, failures, len(removable_edges(G)))


def verify_theorem1(G: MultiGraph, graph_id: str = "") -> TheoremVerdict:
    """Bricks other than K4 and C6-bar have |RE| >= Δ−2."""
    if not is_matching_covered(G):
        return _verdict(G, graph_id, 1, [HypothesisFailure.NOT_MATCHING_COVERED], None)
    failures: list[HypothesisFailure] = []
    if not is_brick(G):
        failures.append(HypothesisFailure.NOT_BRICK)
    failures.extend(_exclusions(G))
    return _verdict(G, graph_id, 1, failures, len(removable_edges(G)))


def verify_theorem(G: MultiGraph, theorem: int, graph_id: str = "") -> TheoremVerdict:
    if theorem == 1:
        return verify_theorem1(G, graph_id)
    if theorem == 2:
        return verify_theorem2(G, graph_id)
    raise ValueError(f"theorem must be 1 or 2, got {theorem}")


def summarize(verdicts: Sequence[TheoremVerdict]) -> dict[str, Any]:
    """Aggregate counts for a verify run."""
    failures: Counter[str] = Counter(
        f.value for v in verdicts for f in v.hypothesis_failures
    )
    return {
        "graphs": len(verdicts),
        "hypothesis_holds": sum(1 for v in verdicts if v.hypothesis_holds),
        "satisfied": sum(1 for v in verdicts if v.satisfied),
        "sharp": sum(
            1 for v in verdicts
            if v.hypothesis_holds and v.removable_count == max(v.bound, 0)
        ),
        "violations": sorted(v.graph_id for v in verdicts if v.violated),
        "hypothesis_failures": dict(sorted(failures.items())),
    }


# ── Lemma Reports ─────────────────────────────────────────────────────────────


class LemmaId(str, Enum):
    L1 = "L1"                       # brace on >= 6 vertices: every edge removable
    L2 = "L2"                       # brace on >= 6 vertices: 3-connected
    L3 = "L3"                       # removability through tight cut contractions
    L4 = "L4"                       # b additive over tight cuts
    L5 = "L5"                       # near-brick: exactly one bipartite shore
    L6 = "L6"                       # bisubdivision keeps b, RE(H) = RE(G) \ {e}
    CLAIM1 = "Claim1"               # RE(G − e1) ⊆ RE(G) for parallel e1
    CLAIM2 = "Claim2"               # retracted ear: near-brick, RE relation
    CLAIM3 = "Claim3"               # retracted ear: irreducible
    DECOMP_INVARIANCE = "DecompInvariance"
    FOUR_VERTEX_CENSUS = "FourVertexCensus"


@dataclass
class Violation:
    graph_id: str
    detail: str
    encoding: str               # sparse6, replayable through the CLI

    def to_dict(self) -> dict[str, Any]:
        return {"graph_id": self.graph_id, "detail": self.detail, "sparse6": self.encoding}


@dataclass
class LemmaReport:
    lemma_id: LemmaId
    instances_checked: int = 0
    skipped: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def check(self, ok: bool, graph_id: str, G: MultiGraph, detail: str) -> None:
        """Count one instance; record a violation when `ok` is false."""
        self.instances_checked += 1
        if not ok:
            log.error(f"> THEOREMS: {self.lemma_id.value} violated by {graph_id}: {detail}")
            self.violations.append(Violation(graph_id, detail, to_sparse6(G)))

    def merge(self, other: LemmaReport) -> None:
        self.instances_checked += other.instances_checked
        self.skipped += other.skipped
        self.violations.extend(other.violations)

    def to_dict(self) -> dict[str, Any]:
        return {
            "lemma_id": self.lemma_id.value,
            "instances_checked": self.instances_checked,
            "skipped": self.skipped,
            "violations": [v.to_dict() for v in self.violations],
        }


def _new_reports() -> dict[LemmaId, LemmaReport]:
    return {lemma: LemmaReport(lemma) for lemma in LemmaId}


# ── Individual Lemma Checks ───────────────────────────────────────────────────


def verify_lemma6_roundtrip(
    G: MultiGraph,
    e: EdgeId,
    length: int,
    graph_id: str = "",
    b_g: int | None = None,
    re_g: frozenset[EdgeId] | None = None,
) -> LemmaReport:
    """
    H = bisubdivide(G, e, length). When H is matching covered, G must be
    too, with b(G) = b(H) and RE(H) = RE(G) ∖ {e}. EdgeIds of G survive
    unchanged in H, so the sets compare directly.

    b_g and re_g may be passed in by callers that already hold them for a
    matching covered G; they are computed here otherwise.
    """
    report = LemmaReport(LemmaId.L6)
    H = bisubdivide(G, e, length)
    if not is_matching_covered(H):
        report.skipped += 1
        return report
    label = f"e={e} length={length}"
    if (b_g is None or re_g is None) and not is_matching_covered(G):
        report.check(False, graph_id, G, f"{label}: bisubdivision matching covered but graph is not")
        return report
    if b_g is None:
        b_g = brick_count(G)
    if re_g is None:
        re_g = removable_edges(G)
    b_h = brick_count(H)
    expected = re_g - {e}
    actual = removable_edges(H)
    ok = b_g == b_h and actual == expected
    report.check(
        ok, graph_id, G,
        f"{label}: b(G)={b_g} b(H)={b_h} RE(H)={sorted(actual)} RE(G)-e={sorted(expected)}",
    )
    return report


def _check_braces(graph_id: str, G: MultiGraph, re_g: frozenset[EdgeId], reports: dict[LemmaId, LemmaReport]) -> None:
    if G.n < 6 or not is_brace(G):
        return
    missing = sorted(set(range(G.m)) - re_g)
    reports[LemmaId.L1].check(not missing, graph_id, G, f"brace edges not removable: {missing}")
    reports[LemmaId.L2].check(is_k_connected(G, 3), graph_id, G, "brace is not 3-connected")


def _check_cut(
    graph_id: str,
    G: MultiGraph,
    cut: Cut,
    b_g: int,
    re_g: frozenset[EdgeId],
    reports: dict[LemmaId, LemmaReport],
) -> None:
    shrink_x, shrink_xbar = contractions(G, cut)
    shore = sorted(cut.shore)

    b_parts = brick_count(shrink_x.graph) + brick_count(shrink_xbar.graph)
    reports[LemmaId.L4].check(b_g == b_parts, graph_id, G, f"shore {shore}: b(G)={b_g} but contractions sum to {b_parts}")

    re_x = removable_edges(shrink_x.graph)
    re_xbar = removable_edges(shrink_xbar.graph)
    wrong: list[EdgeId] = []
    for e in range(G.m):
        in_parts = all(
            shrink.edge_map[e] in re_part
            for shrink, re_part in ((shrink_x, re_x), (shrink_xbar, re_xbar))
            if e in shrink.edge_map
        )
        if (e in re_g) != in_parts:
            wrong.append(e)
    reports[LemmaId.L3].check(not wrong, graph_id, G, f"shore {shore}: removability disagrees on edges {wrong}")


def _shore_bipartite(G: MultiGraph, shore: Iterable[int]) -> bool:
    sub, _ = induced(G, shore)
    return is_bipartite(sub)[0]


def _check_near_brick_shores(graph_id: str, G: MultiGraph, cuts: Sequence[Cut], report: LemmaReport) -> None:
    trivial = [cut_of(G, (v,)) for v in range(G.n)]
    for cut in (*trivial, *cuts):
        sides = (_shore_bipartite(G, cut.shore), _shore_bipartite(G, cut.complement))
        report.check(
            sum(sides) == 1, graph_id, G,
            f"shore {sorted(cut.shore)}: bipartite sides {sides}",
        )


def _leaf_multiset_matches(a: DecompositionNode, b: DecompositionNode) -> bool:
    left = [(leaf.leaf_kind, underlying_simple(leaf.graph)) for leaf in leaves(a)]
    right = [(leaf.leaf_kind, underlying_simple(leaf.graph)) for leaf in leaves(b)]
    if len(left) != len(right):
        return False
    unused = list(right)
    for kind, graph in left:
        for idx, (other_kind, other) in enumerate(unused):
            if kind is other_kind and are_isomorphic(graph, other):
                del unused[idx]
                break
        else:
            return False
    return True


def _check_invariance(
    graph_id: str,
    G: MultiGraph,
    cuts: Sequence[Cut],
    b_g: int,
    report: LemmaReport,
) -> None:
    if not cuts:
        return
    reference = tight_cut_decomposition(G)
    for cut in cuts:
        tree = tight_cut_decomposition(G, first_cut=cut)
        b_tree = sum(1 for leaf in leaves(tree) if leaf.leaf_kind is LeafKind.BRICK)
        report.check(
            b_tree == b_g and _leaf_multiset_matches(reference, tree),
            graph_id, G,
            f"first cut {sorted(cut.shore)} gives a different leaf multiset (b={b_tree}, expected {b_g})",
        )


def _maximal_chain(G: MultiGraph, e: EdgeId) -> Ear | None:
    for ear in find_single_ears(G):
        if e in ear.edges:
            return ear
    return None


def _check_parallel_edges(
    graph_id: str,
    G: MultiGraph,
    re_g: frozenset[EdgeId],
    irreducible_near_brick: bool,
    reports: dict[LemmaId, LemmaReport],
) -> None:
    for e1, e2 in parallel_pairs(G):
        G1 = delete_edge(G, e1)
        back = {new: old for old, new in deletion_map(G.m, e1).items()}
        re_g1 = removable_edges(G1)
        outside = sorted(back[f] for f in re_g1 if back[f] not in re_g)
        reports[LemmaId.CLAIM1].check(
            not outside, graph_id, G,
            f"deleting {e1}: edges {outside} removable in G-e1 but not in G",
        )

        if not irreducible_near_brick or is_irreducible(G1):
            continue
        e2_new = deletion_map(G.m, e1)[e2]
        ear = _maximal_chain(G1, e2_new)
        if ear is None or ear.closed or ear.length % 2 == 0 or ear.length < 3:
            reports[LemmaId.CLAIM2].skipped += 1
            reports[LemmaId.CLAIM3].skipped += 1
            continue
        retracted = retract_ear(G1, ear)
        mapping, new_edge = retraction_edge_map(G1, ear)
        near_brick = is_matching_covered(retracted) and brick_count(retracted) == 1
        mapped = {mapping.get(f, -1) for f in re_g1}
        expected = set(removable_edges(retracted)) - {new_edge} if near_brick else set()
        reports[LemmaId.CLAIM2].check(
            near_brick and mapped == expected, graph_id, G,
            f"deleting {e1}, retracting ear {list(ear.edges)}: near_brick={near_brick} "
            f"RE(G-e1)->{sorted(mapped)} RE(G')-e={sorted(expected)}",
        )
        reports[LemmaId.CLAIM3].check(
            is_irreducible(retracted), graph_id, G,
            f"deleting {e1}, retracting ear {list(ear.edges)}: result is not irreducible",
        )


@lru_cache(maxsize=None)
def _four_vertex_references() -> tuple[MultiGraph, MultiGraph]:
    return named_graph(GraphName.C4), named_graph(GraphName.K4)


def _census_expected(G: MultiGraph) -> bool:
    return any(G.m == ref.m and are_isomorphic(G, ref) for ref in _four_vertex_references())


def check_lemmas(graph_id: str, G: MultiGraph, limits: Limits | None = None) -> list[LemmaReport]:
    """All lemma checks that apply to one graph, one report per LemmaId."""
    limits = limits or get_limits()
    reports = _new_reports()

    if G.n == 4 and is_simple(G):
        census = reports[LemmaId.FOUR_VERTEX_CENSUS]
        covered = is_matching_covered(G)
        census.check(
            covered == _census_expected(G), graph_id, G,
            f"matching_covered={covered} disagrees with the C4/K4 census",
        )

    if not is_matching_covered(G):
        return list(reports.values())

    re_g = removable_edges(G)
    _check_braces(graph_id, G, re_g, reports)

    if G.n <= limits.lemma_max_n:
        b_g = brick_count(G)
        cuts = all_nontrivial_tight_cuts(G)
        for cut in cuts:
            _check_cut(graph_id, G, cut, b_g, re_g, reports)
        if b_g == 1:
            _check_near_brick_shores(graph_id, G, cuts, reports[LemmaId.L5])
        _check_invariance(graph_id, G, cuts, b_g, reports[LemmaId.DECOMP_INVARIANCE])
        for e in range(G.m):
            for length in limits.bisubdivision_lengths:
                reports[LemmaId.L6].merge(verify_lemma6_roundtrip(G, e, length, graph_id, b_g, re_g))
        irreducible_near_brick = b_g == 1 and is_irreducible(G)
    else:
        log.debug(f"> THEOREMS: {graph_id} above lemma cap n={limits.lemma_max_n}, cut lemmas skipped")
        for lemma in (LemmaId.L3, LemmaId.L4, LemmaId.L5, LemmaId.L6, LemmaId.DECOMP_INVARIANCE):
            reports[lemma].skipped += 1
        irreducible_near_brick = False

    _check_parallel_edges(graph_id, G, re_g, irreducible_near_brick, reports)
    return list(reports.values())


def merge_reports(batches: Iterable[Sequence[LemmaReport]]) -> list[LemmaReport]:
    """Fold per-graph reports into one report per LemmaId, in LemmaId order."""
    merged = _new_reports()
    for batch in batches:
        for report in batch:
            merged[report.lemma_id].merge(report)
    return list(merged.values())


def run_lemma_suite(
    corpus: Iterable[MultiGraph | CorpusEntry],
    limits: Limits | None = None,
) -> list[LemmaReport]:
    """One report per lemma over every applicable instance of the corpus."""
    entries = as_corpus(corpus)
    log.info(f"> THEOREMS: lemma suite over {len(entries)} graph(s)")
    reports = merge_reports(check_lemmas(graph_id, G, limits) for graph_id, G in entries)
    dirty = [r.lemma_id.value for r in reports if not r.clean]
    if dirty:
        log.warning(f"> THEOREMS: violations in {', '.join(dirty)}")
    return reports


def four_vertex_census() -> LemmaReport:
    """
    Every labeled simple graph on four vertices (2^6 of them): matching
    covered exactly when isomorphic to C4 or K4.
    """
    report = LemmaReport(LemmaId.FOUR_VERTEX_CENSUS)
    pairs = list(combinations(range(4), 2))
    for mask in range(1 << len(pairs)):
        G = from_edges(4, [pair for bit, pair in enumerate(pairs) if mask >> bit & 1])
        covered = is_matching_covered(G)
        report.check(
            covered == _census_expected(G), f"mask:{mask}", G,
            f"matching_covered={covered} disagrees with the C4/K4 census",
        )
    return report


def matching_covered_four_vertex_graphs() -> list[MultiGraph]:
    """The labeled matching covered simple graphs on four vertices."""
    pairs = list(combinations(range(4), 2))
    graphs = (
        from_edges(4, [pair for bit, pair in enumerate(pairs) if mask >> bit & 1])
        for mask in range(1 << len(pairs))
    )
    return [G for G in graphs if is_matching_covered(G)]


# ── Extremal Search ───────────────────────────────────────────────────────────


class WitnessKind(str, Enum):
    SHARP = "sharp"
    IRREDUCIBILITY_NEEDED = "irreducibility-needed"


@dataclass
class ExtremalWitness:
    graph: MultiGraph
    verdict: TheoremVerdict
    kind: WitnessKind

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "sparse6": to_sparse6(self.graph),
            "verdict": self.verdict.to_dict(),
        }


def classify_witness(G: MultiGraph, verdict: TheoremVerdict) -> ExtremalWitness | None:
    """The extremal role of one Theorem 2 verdict, if any."""
    if verdict.removable_count is None:
        return None
    if verdict.hypothesis_holds and verdict.removable_count == max(verdict.bound, 0):
        return ExtremalWitness(G, verdict, WitnessKind.SHARP)
    if (
        verdict.hypothesis_failures == [HypothesisFailure.NOT_IRREDUCIBLE]
        and verdict.removable_count < verdict.bound
    ):
        return ExtremalWitness(G, verdict, WitnessKind.IRREDUCIBILITY_NEEDED)
    return None


def extremal_search(corpus: Iterable[MultiGraph | CorpusEntry]) -> list[ExtremalWitness]:
    """
    Graphs attaining the Theorem 2 bound exactly, and near-bricks that fail
    the hypothesis only through irreducibility while falling below it.
    """
    found: list[ExtremalWitness] = []
    for graph_id, G in as_corpus(corpus):
        witness = classify_witness(G, verify_theorem2(G, graph_id))
        if witness is not None:
            found.append(witness)
    log.info(
        f"> THEOREMS: {sum(w.kind is WitnessKind.SHARP for w in found)} sharp, "
        f"{sum(w.kind is WitnessKind.IRREDUCIBILITY_NEEDED for w in found)} irreducibility-needed witness(es)"
    )
    return found
