"""Shared fixtures, strategies and corpora for the brickyard test suite."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from brickyard import config
from brickyard.classify import GraphName, named_graph
from brickyard.corpus import atlas_corpus, doubled_corpus
from brickyard.graphio import read_graph_file
from brickyard.matching import is_matching_covered
from brickyard.multigraph import MultiGraph

DATA_DIR = Path(__file__).parent / "data"
CUBIC8 = DATA_DIR / "cubic8.g6"

settings.register_profile(
    "brickyard",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("brickyard")


@pytest.fixture(autouse=True)
def _fresh_config(monkeypatch):
    """Every test starts from the shipped brickyard.yaml without env overrides."""
    monkeypatch.delenv(config.ENV_MAX_N, raising=False)
    monkeypatch.delenv(config.ENV_CONFIG, raising=False)
    config.reset()
    yield
    config.reset()


# ── Named graphs ──────────────────────────────────────────────────────────────


@pytest.fixture
def k4() -> MultiGraph:
    return named_graph(GraphName.K4)


@pytest.fixture
def c6_bar() -> MultiGraph:
    return named_graph(GraphName.C6_BAR)


@pytest.fixture
def k33() -> MultiGraph:
    return named_graph(GraphName.K33)


@pytest.fixture
def doubled_k4(k4) -> MultiGraph:
    """K4 with a second copy of edge 01 appended as EdgeId 6."""
    return MultiGraph(4, k4.edges + ((0, 1),))


# ── Corpora (built once per session) ──────────────────────────────────────────


@lru_cache(maxsize=None)
def cubic8_corpus() -> tuple[tuple[str, MultiGraph], ...]:
    return tuple(read_graph_file(CUBIC8))


@lru_cache(maxsize=None)
def atlas(min_n: int = 4, max_n: int = 7) -> tuple[tuple[str, MultiGraph], ...]:
    return tuple(atlas_corpus(min_n, max_n))


@lru_cache(maxsize=None)
def matching_covered_atlas(max_n: int = 6) -> tuple[tuple[str, MultiGraph], ...]:
    return tuple((gid, G) for gid, G in atlas(4, max_n) if is_matching_covered(G))


@lru_cache(maxsize=None)
def doubled_atlas(max_n: int = 6) -> tuple[tuple[str, MultiGraph], ...]:
    return tuple(doubled_corpus(matching_covered_atlas(max_n)))


# ── Hypothesis strategies ─────────────────────────────────────────────────────


@st.composite
def multigraphs(draw, min_n: int = 2, max_n: int = 7, max_m: int = 14) -> MultiGraph:
    """Random loopless multigraphs; parallel edges are likely."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=max_m)) if pairs else []
    return MultiGraph(n, tuple(edges))


@st.composite
def matching_covered_graphs(draw, max_n: int = 6) -> MultiGraph:
    """A matching covered atlas graph, possibly with one edge doubled."""
    pool = matching_covered_atlas(max_n)
    _, G = draw(st.sampled_from(pool))
    if draw(st.booleans()):
        e = draw(st.integers(min_value=0, max_value=G.m - 1))
        G = MultiGraph(G.n, G.edges + (G.edges[e],))
    return G
