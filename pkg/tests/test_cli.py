"""End-to-end tests for the brickyard command line."""

from __future__ import annotations

import json

import pytest

from brickyard import theorems
from brickyard.cli import EXIT_CAP, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, main
from brickyard.graphio import emit_graph
from brickyard.classify import GraphName, named_graph

from conftest import CUBIC8


def _lines(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line.strip()]


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.g6"
    path.write_bytes(b"C~\n")
    return str(path)


@pytest.fixture
def c6_file(tmp_path):
    path = tmp_path / "c6.txt"
    path.write_bytes(emit_graph(named_graph(GraphName.C6), "edgelist"))
    return str(path)


class TestAnalyze:

    def test_k4(self, k4_file, capsys):
        assert main(["analyze", "-q", k4_file]) == EXIT_OK
        (report,) = _lines(capsys.readouterr().out)
        assert report["input_id"] == "k4.g6:1"
        assert report["class"]["brick"] is True
        assert report["removable_edges"] == []
        assert report["b"] == 1
        assert report["theorem2"]["hypothesis_failures"] == ["is-K4"]

    def test_c6(self, c6_file, capsys):
        assert main(["analyze", "-q", c6_file]) == EXIT_OK
        (report,) = _lines(capsys.readouterr().out)
        assert report["b"] == 0
        assert [child["kind"] for child in report["decomposition"]["children"]] == ["brace", "brace"]

    def test_pretty_is_one_document(self, k4_file, capsys):
        assert main(["analyze", "-q", "--pretty", k4_file, k4_file]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert len(doc) == 2

    def test_empty_file(self, tmp_path, capsys):
        path = tmp_path / "empty.txt"
        path.write_bytes(b"")
        assert main(["analyze", "-q", str(path)]) == EXIT_INPUT
        assert capsys.readouterr().out == ""

    def test_no_input(self, capsys):
        assert main(["analyze", "-q"]) == EXIT_INPUT

    def test_cap(self, c6_file):
        assert main(["analyze", "-q", "--max-n", "4", c6_file]) == EXIT_CAP

    def test_oversized_input_is_rejected_on_read(self, tmp_path, capsys):
        path = tmp_path / "huge.txt"
        path.write_text("100000 1\n0 1\n")
        assert main(["analyze", "-q", str(path)]) == EXIT_CAP
        assert capsys.readouterr().out == ""

    def test_parallel_output_matches_serial(self, capsys):
        assert main(["analyze", "-q", str(CUBIC8)]) == EXIT_OK
        serial = capsys.readouterr().out
        assert main(["analyze", "-q", "--jobs", "2", str(CUBIC8)]) == EXIT_OK
        assert capsys.readouterr().out == serial


class TestDecompose:

    def test_json(self, c6_file, capsys):
        assert main(["decompose", "-q", c6_file]) == EXIT_OK
        (record,) = _lines(capsys.readouterr().out)
        assert record["b"] == 0
        assert record["decomposition"]["shore"] == [0, 1, 2]

    def test_dot(self, c6_file, capsys):
        assert main(["decompose", "-q", "--dot", c6_file]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith('digraph "c6.txt:1" {')
        assert "n0 -> n1;" in out and "n0 -> n2;" in out

    def test_tree_goes_to_stderr(self, c6_file, capsys):
        assert main(["decompose", "--tree", c6_file]) == EXIT_OK
        captured = capsys.readouterr()
        assert "brace" in captured.err
        assert _lines(captured.out)[0]["b"] == 0

    def test_not_matching_covered(self, tmp_path, capsys):
        path = tmp_path / "path.txt"
        path.write_text("4 3\n0 1\n1 2\n2 3\n")
        assert main(["decompose", "-q", str(path)]) == EXIT_OK
        (record,) = _lines(capsys.readouterr().out)
        assert record["matching_covered"] is False
        assert record["decomposition"] is None


class TestVerify:

    def test_theorem1(self, k4_file, capsys):
        assert main(["verify", "-q", "--theorem", "1", k4_file]) == EXIT_OK
        records = _lines(capsys.readouterr().out)
        assert records[0]["theorem"] == 1
        assert records[-1]["summary"]["graphs"] == 1

    def test_atlas(self, capsys):
        assert main(["verify", "-q", "--atlas", "4:5"]) == EXIT_OK
        summary = _lines(capsys.readouterr().out)[-1]["summary"]
        assert summary["graphs"] == 6 + 21
        assert summary["violations"] == []

    def test_pretty(self, k4_file, capsys):
        assert main(["verify", "-q", "--pretty", "--doubled", k4_file]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["verdicts"]) == 1 + 6
        assert doc["summary"]["sharp"] == 6

    def test_corrupt_file(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n0 1\n1 7\n")
        assert main(["verify", "-q", str(path)]) == EXIT_INPUT

    def test_violation_carries_a_replayable_encoding(self, monkeypatch, tmp_path, capsys):
        path = tmp_path / "dk4.txt"
        path.write_text("4 7\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 1\n")
        monkeypatch.setattr(theorems, "removable_edges", lambda G: frozenset())
        assert main(["verify", "-q", str(path)]) == EXIT_VIOLATION
        records = _lines(capsys.readouterr().out)
        assert records[0]["satisfied"] is False
        assert records[0]["sparse6"].startswith(":")
        assert records[-1]["summary"]["violations"] == ["dk4.txt:1"]


class TestLemmas:

    def test_no_input_is_clean(self, capsys):
        assert main(["lemmas", "-q"]) == EXIT_OK
        reports = _lines(capsys.readouterr().out)
        assert all(r["instances_checked"] == 0 for r in reports)

    def test_census(self, capsys):
        assert main(["lemmas", "-q", "--census"]) == EXIT_OK
        reports = {r["lemma_id"]: r for r in _lines(capsys.readouterr().out)}
        assert reports["FourVertexCensus"]["instances_checked"] == 64

    def test_fault_is_reported(self, monkeypatch, tmp_path):
        path = tmp_path / "k33.txt"
        path.write_bytes(emit_graph(named_graph(GraphName.K33), "edgelist"))
        monkeypatch.setattr(theorems, "removable_edges", lambda G: frozenset())
        assert main(["lemmas", "-q", str(path)]) == EXIT_VIOLATION


class TestExtremal:

    def test_cubic_fixture_has_sharp_bricks(self, capsys):
        assert main(["extremal", "-q", str(CUBIC8)]) == EXIT_OK
        witnesses = _lines(capsys.readouterr().out)
        assert witnesses
        assert all(w["kind"] == "sharp" for w in witnesses)
        assert all(w["verdict"]["removable_count"] == 1 for w in witnesses)
