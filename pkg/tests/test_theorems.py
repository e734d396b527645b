"""Tests for the Δ−2 theorem verdicts, the lemma suite and the extremal search."""

from __future__ import annotations

import pytest

from brickyard import theorems
from brickyard.classify import GraphName, named_graph, non_irreducible_witness
from brickyard.corpus import build_corpus
from brickyard.multigraph import MultiGraph, bisubdivide
from brickyard.theorems import (
    HypothesisFailure,
    LemmaId,
    WitnessKind,
    extremal_search,
    four_vertex_census,
    matching_covered_four_vertex_graphs,
    run_lemma_suite,
    summarize,
    verify_lemma6_roundtrip,
    verify_theorem1,
    verify_theorem2,
)

from conftest import atlas, cubic8_corpus, doubled_atlas, matching_covered_atlas


def _report(reports, lemma: LemmaId):
    return next(r for r in reports if r.lemma_id is lemma)


@pytest.fixture
def irreducible_with_parallel_ear(k4) -> MultiGraph:
    """Bisubdivided K4 whose middle ear edge (4, 5) is doubled: deleting
    either copy re-creates a single ear of length three."""
    H = bisubdivide(k4, 0, 3)
    return MultiGraph(H.n, H.edges + ((4, 5),))


class TestTheorem2:

    def test_bisubdivided_k4_is_not_irreducible(self, k4):
        verdict = verify_theorem2(bisubdivide(k4, 0, 3))
        assert verdict.hypothesis_failures == [HypothesisFailure.NOT_IRREDUCIBLE]
        assert not verdict.hypothesis_holds
        assert verdict.satisfied is None

    def test_exceptions(self, k4, c6_bar):
        assert verify_theorem2(k4).hypothesis_failures == [HypothesisFailure.IS_K4]
        verdict = verify_theorem2(c6_bar)
        assert verdict.hypothesis_failures == [HypothesisFailure.IS_C6_BAR]
        assert verdict.removable_count == 0

    def test_relabeled_c6_bar_is_excluded(self):
        prism = named_graph(GraphName.PRISM)
        assert verify_theorem2(prism).hypothesis_failures == [HypothesisFailure.IS_C6_BAR]

    def test_multigraph_over_k4_is_not_excluded(self, doubled_k4):
        verdict = verify_theorem2(doubled_k4, "doubled-k4")
        assert verdict.hypothesis_holds
        assert (verdict.delta, verdict.bound, verdict.removable_count) == (4, 2, 2)
        assert verdict.satisfied is True
        assert verdict.to_dict()["graph_id"] == "doubled-k4"

    def test_even_cycle(self):
        verdict = verify_theorem2(named_graph(GraphName.C6))
        assert verdict.hypothesis_failures == [
            HypothesisFailure.NOT_NEAR_BRICK,
            HypothesisFailure.NOT_IRREDUCIBLE,
        ]

    def test_not_matching_covered(self):
        verdict = verify_theorem2(MultiGraph(4, ((0, 1), (1, 2), (2, 3))))
        assert verdict.hypothesis_failures == [HypothesisFailure.NOT_MATCHING_COVERED]
        assert verdict.removable_count is None
        assert verdict.to_dict()["hypothesis_failures"] == ["not-matching-covered"]

    def test_petersen(self):
        verdict = verify_theorem2(named_graph(GraphName.PETERSEN))
        assert verdict.hypothesis_holds and verdict.satisfied


class TestTheorem1:

    def test_exceptions_have_no_removable_edges(self, k4, c6_bar):
        for G, failure in ((k4, HypothesisFailure.IS_K4), (c6_bar, HypothesisFailure.IS_C6_BAR)):
            verdict = verify_theorem1(G)
            assert verdict.theorem == 1
            assert verdict.hypothesis_failures == [failure]
            assert verdict.removable_count == 0
            assert verdict.satisfied is None

    def test_near_brick_is_not_a_brick(self, k4):
        verdict = verify_theorem1(bisubdivide(k4, 0, 3))
        assert verdict.hypothesis_failures == [HypothesisFailure.NOT_BRICK]

    @pytest.mark.parametrize("name", ["WAGNER", "PETERSEN"])
    def test_cubic_bricks(self, name):
        verdict = verify_theorem1(named_graph(name))
        assert verdict.hypothesis_holds and verdict.satisfied


class TestLemma6:

    @pytest.mark.parametrize("e", range(6))
    def test_k4(self, k4, e):
        report = verify_lemma6_roundtrip(k4, e, 3)
        assert report.instances_checked == 1 and report.clean

    @pytest.mark.parametrize("e", [0, 4, 8])
    def test_k33(self, k33, e):
        report = verify_lemma6_roundtrip(k33, e, 3)
        assert report.instances_checked == 1 and report.clean

    def test_c4_becomes_c6(self):
        report = verify_lemma6_roundtrip(named_graph(GraphName.C4), 0, 3)
        assert report.instances_checked == 1 and report.clean

    def test_k2_bisubdivision_is_skipped(self):
        report = verify_lemma6_roundtrip(named_graph(GraphName.K2), 0, 3)
        assert report.instances_checked == 0 and report.skipped == 1

    @pytest.mark.parametrize("e", [0, 4])
    def test_precomputed_base_values_give_the_same_report(self, k33, e):
        plain = verify_lemma6_roundtrip(k33, e, 3, "k33")
        reused = verify_lemma6_roundtrip(
            k33, e, 3, "k33", b_g=theorems.brick_count(k33), re_g=theorems.removable_edges(k33),
        )
        assert reused.to_dict() == plain.to_dict()

    def test_base_graph_is_analysed_once(self, monkeypatch, k33):
        calls = {"brick_count": 0, "removable_edges": 0}

        def counting(name):
            original = getattr(theorems, name)

            def wrapper(H, *args, **kwargs):
                if H is k33:
                    calls[name] += 1
                return original(H, *args, **kwargs)
            return wrapper

        for name in calls:
            monkeypatch.setattr(theorems, name, counting(name))
        reports = theorems.check_lemmas("k33", k33)
        assert _report(reports, LemmaId.L6).instances_checked > 0
        assert calls == {"brick_count": 1, "removable_edges": 1}


class TestLemmaSuite:

    def test_empty_corpus(self):
        reports = run_lemma_suite([])
        assert [r.lemma_id for r in reports] == list(LemmaId)
        assert all(r.instances_checked == 0 and r.clean for r in reports)

    def test_doubled_k4_exercises_claim1(self, doubled_k4):
        reports = run_lemma_suite([doubled_k4])
        claim1 = _report(reports, LemmaId.CLAIM1)
        assert claim1.instances_checked == 2
        assert all(r.clean for r in reports)

    def test_parallel_ear_exercises_claims_2_and_3(self, irreducible_with_parallel_ear):
        reports = run_lemma_suite([("ear", irreducible_with_parallel_ear)])
        assert _report(reports, LemmaId.CLAIM2).instances_checked == 2
        assert _report(reports, LemmaId.CLAIM3).instances_checked == 2
        assert all(r.clean for r in reports)

    def test_braces_and_cuts(self, k33):
        c6 = named_graph(GraphName.C6)
        reports = run_lemma_suite([("k33", k33), ("c6", c6)])
        assert _report(reports, LemmaId.L1).instances_checked == 1
        assert _report(reports, LemmaId.L2).instances_checked == 1
        assert _report(reports, LemmaId.L3).instances_checked == 3
        assert _report(reports, LemmaId.L4).instances_checked == 3
        assert _report(reports, LemmaId.DECOMP_INVARIANCE).instances_checked == 3
        assert all(r.clean for r in reports)

    def test_near_brick_shores(self, k4):
        reports = run_lemma_suite([bisubdivide(k4, 0, 3)])
        l5 = _report(reports, LemmaId.L5)
        assert l5.instances_checked >= 6
        assert l5.clean

    def test_census_counts_only_simple_four_vertex_graphs(self, k4, doubled_k4):
        reports = run_lemma_suite([k4, doubled_k4, named_graph(GraphName.C4), MultiGraph(4, ((0, 1),))])
        census = _report(reports, LemmaId.FOUR_VERTEX_CENSUS)
        assert census.instances_checked == 3 and census.clean

    def test_faulty_removability_is_reported(self, monkeypatch, k33):
        monkeypatch.setattr(theorems, "removable_edges", lambda G: frozenset())
        reports = run_lemma_suite([("k33", k33)])
        l1 = _report(reports, LemmaId.L1)
        assert not l1.clean
        violation = l1.violations[0]
        assert violation.graph_id == "k33"
        assert violation.encoding.startswith(":")
        assert l1.to_dict()["violations"][0]["sparse6"] == violation.encoding


class TestFourVertexCensus:

    def test_all_sixty_four_graphs(self):
        report = four_vertex_census()
        assert report.instances_checked == 64
        assert report.clean

    def test_three_labeled_squares_and_k4(self, k4):
        graphs = matching_covered_four_vertex_graphs()
        assert len(graphs) == 4
        assert sum(1 for G in graphs if G.m == 4) == 3
        assert k4 in graphs


class TestExtremalSearch:

    def test_doubled_k4_is_sharp(self, doubled_k4):
        found = extremal_search([doubled_k4])
        assert [w.kind for w in found] == [WitnessKind.SHARP]
        assert found[0].to_dict()["verdict"]["removable_count"] == 2

    def test_irreducibility_is_needed(self):
        found = extremal_search([non_irreducible_witness()])
        assert [w.kind for w in found] == [WitnessKind.IRREDUCIBILITY_NEEDED]
        assert found[0].verdict.removable_count == 1 < found[0].verdict.bound

    def test_brace_is_never_a_witness(self, k33):
        assert extremal_search([k33]) == []

    def test_summarize(self, k4, doubled_k4):
        summary = summarize([verify_theorem2(k4, "k4"), verify_theorem2(doubled_k4, "dk4")])
        assert summary["graphs"] == 2
        assert summary["hypothesis_holds"] == 1
        assert summary["satisfied"] == 1
        assert summary["sharp"] == 1
        assert summary["violations"] == []
        assert summary["hypothesis_failures"] == {"is-K4": 1}


@pytest.mark.slow
class TestExhaustive:

    @staticmethod
    def _corpus():
        return list(atlas(4, 7)) + list(doubled_atlas(6)) + list(cubic8_corpus())

    def test_theorem2_holds(self):
        verdicts = [verify_theorem2(G, gid) for gid, G in self._corpus()]
        assert any(v.hypothesis_holds for v in verdicts)
        assert summarize(verdicts)["violations"] == []

    def test_theorem1_holds(self):
        verdicts = [verify_theorem1(G, gid) for gid, G in self._corpus()]
        assert any(v.hypothesis_holds for v in verdicts)
        assert summarize(verdicts)["violations"] == []

    def test_lemma_suite_is_clean(self):
        corpus = list(matching_covered_atlas(6)) + list(doubled_atlas(6)) + list(cubic8_corpus())
        reports = run_lemma_suite(corpus)
        for report in reports:
            assert report.clean, report.to_dict()
        for lemma in (LemmaId.L1, LemmaId.L2, LemmaId.L3, LemmaId.L4, LemmaId.L5, LemmaId.L6,
                      LemmaId.CLAIM1, LemmaId.CLAIM2, LemmaId.CLAIM3,
                      LemmaId.DECOMP_INVARIANCE, LemmaId.FOUR_VERTEX_CENSUS):
            assert _report(reports, lemma).instances_checked > 0, lemma

    def test_bound_is_attained(self):
        found = extremal_search(self._corpus())
        sharp = [w for w in found if w.kind is WitnessKind.SHARP]
        assert any(w.verdict.delta == 3 and w.verdict.removable_count == 1 for w in sharp)
        assert any(w.verdict.delta == 4 and w.verdict.removable_count == 2 for w in sharp)

    def test_doubled_and_bisubdivided_atlas_needs_irreducibility(self):
        corpus = build_corpus(atlas=(4, 6), doubled=True, bisubdivided=True)
        found = extremal_search(corpus)
        assert any(w.kind is WitnessKind.IRREDUCIBILITY_NEEDED for w in found)
