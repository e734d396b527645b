"""
Brickyard — Corpus Builders

Graph corpora as ordered (graph_id, MultiGraph) lists:
  atlas         every connected graph of the networkx atlas (n <= 7)
  files         graph6 / sparse6 / edgelist files
  doubled       each edge of each matching covered graph doubled once
  bisubdivided  each edge of each matching covered graph bisubdivided
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx

from .config import get_limits
from .errors import CapExceededError, GraphValueError
from .graphio import GraphFormat, read_graph_file
from .matching import is_matching_covered
from .multigraph import MultiGraph, bisubdivide, from_networkx
from .theorems import CorpusEntry

log = logging.getLogger("brickyard.corpus")

ATLAS_MAX_N = 7


def parse_range(text: str) -> tuple[int, int]:
    """Parse MIN:MAX (either side optional) or a single order N."""
    lo, sep, hi = text.partition(":")
    try:
        low = int(lo) if lo else 1
        high = int(hi) if hi else (ATLAS_MAX_N if sep else low)
    except ValueError:
        raise GraphValueError(f"order range must look like MIN:MAX, got {text!r}") from None
    if low < 1 or high < low:
        raise GraphValueError(f"empty order range {text!r}")
    return low, high


def atlas_corpus(min_n: int = 4, max_n: int = ATLAS_MAX_N) -> list[CorpusEntry]:
    """Connected atlas graphs with min_n <= n <= max_n, in atlas order."""
    if max_n > ATLAS_MAX_N:
        raise GraphValueError(f"the graph atlas stops at n={ATLAS_MAX_N}, got max_n={max_n}")
    entries = [
        (f"atlas:{idx}", from_networkx(graph))
        for idx, graph in enumerate(nx.graph_atlas_g())
        if min_n <= graph.number_of_nodes() <= max_n and nx.is_connected(graph)
    ]
    log.info(f"> CORPUS: {len(entries)} connected atlas graph(s) with {min_n} <= n <= {max_n}")
    return entries


def file_corpus(paths: Iterable[str | Path], fmt: GraphFormat | str | None = None) -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    for path in paths:
        entries.extend(read_graph_file(path, fmt))
    return entries


def doubled_corpus(entries: Iterable[CorpusEntry]) -> list[CorpusEntry]:
    """One extra copy of each edge, one edge at a time, of every matching covered graph."""
    out: list[CorpusEntry] = []
    for graph_id, G in entries:
        if not is_matching_covered(G):
            continue
        for e, edge in enumerate(G.edges):
            out.append((f"{graph_id}+dup{e}", MultiGraph(G.n, G.edges + (edge,))))
    log.info(f"> CORPUS: {len(out)} doubled-edge multigraph(s)")
    return out


def bisubdivided_corpus(
    entries: Iterable[CorpusEntry],
    lengths: Sequence[int] | None = None,
    max_n: int | None = None,
) -> list[CorpusEntry]:
    """Matching covered bisubdivisions of matching covered graphs, within the order cap."""
    limits = get_limits()
    lengths = tuple(lengths) if lengths is not None else limits.bisubdivision_lengths
    cap = max_n if max_n is not None else limits.max_n
    out: list[CorpusEntry] = []
    for graph_id, G in entries:
        if not is_matching_covered(G):
            continue
        for e in range(G.m):
            for length in lengths:
                if G.n + length - 1 > cap:
                    continue
                H = bisubdivide(G, e, length)
                if is_matching_covered(H):
                    out.append((f"{graph_id}+bisub{e}x{length}", H))
    log.info(f"> CORPUS: {len(out)} bisubdivided graph(s)")
    return out


def build_corpus(
    paths: Sequence[str | Path] = (),
    fmt: GraphFormat | str | None = None,
    atlas: tuple[int, int] | None = None,
    doubled: bool = False,
    bisubdivided: bool = False,
    max_n: int | None = None,
) -> list[CorpusEntry]:
    """
    Files and atlas first, then the derived corpora built from them.
    With max_n, any input graph above that order is rejected before
    anything else is computed on it.
    """
    base = file_corpus(paths, fmt)
    if max_n is not None:
        for graph_id, G in base:
            if G.n > max_n:
                raise CapExceededError(f"input order ({graph_id})", max_n, G.n)
    if atlas is not None:
        base.extend(atlas_corpus(*atlas))
    entries = list(base)
    if doubled:
        entries.extend(doubled_corpus(base))
    if bisubdivided:
        entries.extend(bisubdivided_corpus(base))
    return entries
