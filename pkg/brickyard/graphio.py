"""
Brickyard — Graph Input / Output

Three formats:
  graph6    simple graphs, one per line (networkx codec)
  sparse6   multigraphs, one per line, leading ':' (networkx codec)
  edgelist  first line "n m", then m lines "u v" (0-based); several
            graphs may follow each other; blank lines and '#' comments
            are ignored

The optional ">>graph6<<" / ">>sparse6<<" headers are accepted. Loops
are rejected with their position. Edges read from graph6/sparse6 are
listed in sorted endpoint order, so EdgeIds are reproducible.
"""

from __future__ import annotations

import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Iterator

import networkx as nx

from .errors import GraphParseError, GraphValueError
from .multigraph import MultiGraph, is_simple, to_networkx

log = logging.getLogger("brickyard.graphio")

GRAPH6_HEADER: bytes = b">>graph6<<"
SPARSE6_HEADER: bytes = b">>sparse6<<"


class GraphFormat(str, Enum):
    GRAPH6 = "graph6"
    SPARSE6 = "sparse6"
    EDGELIST = "edgelist"


_SUFFIXES: dict[str, GraphFormat] = {
    ".g6": GraphFormat.GRAPH6,
    ".graph6": GraphFormat.GRAPH6,
    ".s6": GraphFormat.SPARSE6,
    ".sparse6": GraphFormat.SPARSE6,
}


# ── Format Detection ──────────────────────────────────────────────────────────


def detect_format(data: bytes, name: str = "") -> GraphFormat:
    """Infer the format from the file suffix, then from the content."""
    suffix = Path(name).suffix.lower()
    if suffix in _SUFFIXES:
        return _SUFFIXES[suffix]
    head = data.lstrip()
    if head.startswith(SPARSE6_HEADER) or head.startswith(b":"):
        return GraphFormat.SPARSE6
    if head.startswith(GRAPH6_HEADER):
        return GraphFormat.GRAPH6
    return GraphFormat.EDGELIST


# ── Parsing ───────────────────────────────────────────────────────────────────


def _strip_header(line: bytes, header: bytes) -> bytes:
    return line[len(header):] if line.startswith(header) else line


def _from_nx(graph: nx.Graph, source: str, line: int) -> MultiGraph:
    if graph.number_of_nodes() == 0:
        raise GraphParseError("graph has no vertices", source, line)
    pairs = sorted(tuple(sorted((u, v))) for u, v in graph.edges())
    for idx, (u, v) in enumerate(pairs):
        if u == v:
            raise GraphParseError(f"loop at vertex {u}", source, line, idx)
    return MultiGraph(graph.number_of_nodes(), tuple(pairs))


def _parse_graph6(data: bytes, source: str) -> Iterator[tuple[int, MultiGraph]]:
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = _strip_header(raw.strip(), GRAPH6_HEADER)
        if not line:
            continue
        if any(c < 63 or c > 126 for c in line):
            raise GraphParseError("graph6 characters must lie in [63, 126]", source, lineno)
        try:
            graph = nx.from_graph6_bytes(line)
        except (nx.NetworkXError, ValueError, IndexError) as exc:
            raise GraphParseError(f"malformed graph6: {exc}", source, lineno) from None
        yield lineno, _from_nx(graph, source, lineno)


def _parse_sparse6(data: bytes, source: str) -> Iterator[tuple[int, MultiGraph]]:
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = _strip_header(raw.strip(), SPARSE6_HEADER)
        if not line:
            continue
        if not line.startswith(b":"):
            raise GraphParseError("sparse6 line must start with ':'", source, lineno)
        try:
            graph = nx.from_sparse6_bytes(line)
        except (nx.NetworkXError, ValueError, IndexError) as exc:
            raise GraphParseError(f"malformed sparse6: {exc}", source, lineno) from None
        yield lineno, _from_nx(graph, source, lineno)


def _int_tokens(text: str, count: int, what: str, source: str, lineno: int) -> list[int]:
    tokens = text.split()
    if len(tokens) != count:
        raise GraphParseError(f"expected {what}, got {text.strip()!r}", source, lineno)
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise GraphParseError(f"expected integers for {what}, got {text.strip()!r}", source, lineno) from None


def _parse_edgelist(data: bytes, source: str) -> Iterator[tuple[int, MultiGraph]]:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise GraphParseError("edgelist input is not UTF-8 text", source) from None

    lines = [
        (lineno, content)
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if (content := raw.split("#", 1)[0].strip())
    ]
    pos = 0
    while pos < len(lines):
        header_line, header = lines[pos]
        n, m = _int_tokens(header, 2, "header 'n m'", source, header_line)
        if n < 1 or m < 0:
            raise GraphParseError(f"header needs n >= 1 and m >= 0, got n={n} m={m}", source, header_line)
        pos += 1
        edges: list[tuple[int, int]] = []
        for idx in range(m):
            if pos >= len(lines):
                raise GraphParseError(f"expected {m} edges, found {idx}", source, header_line, idx)
            lineno, content = lines[pos]
            u, v = _int_tokens(content, 2, "edge 'u v'", source, lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(f"vertex out of range [0, {n}) in edge {u} {v}", source, lineno, idx)
            if u == v:
                raise GraphParseError(f"loop at vertex {u}", source, lineno, idx)
            edges.append((u, v))
            pos += 1
        yield header_line, MultiGraph(n, tuple(edges))


_PARSERS = {
    GraphFormat.GRAPH6: _parse_graph6,
    GraphFormat.SPARSE6: _parse_sparse6,
    GraphFormat.EDGELIST: _parse_edgelist,
}


def parse_graphs(
    data: bytes,
    fmt: GraphFormat | str | None = None,
    source: str = "<input>",
) -> list[tuple[int, MultiGraph]]:
    """Every graph in `data` with the line it starts on. Empty input is an error."""
    fmt = GraphFormat(fmt) if fmt is not None else detect_format(data, source)
    graphs = list(_PARSERS[fmt](data, source))
    if not graphs:
        raise GraphParseError(f"no {fmt.value} graph found", source)
    log.debug(f"> GRAPHIO: {len(graphs)} {fmt.value} graph(s) from {source}")
    return graphs


def parse_graph(data: bytes, fmt: GraphFormat | str | None = None, source: str = "<input>") -> MultiGraph:
    """Exactly one graph from `data`."""
    graphs = parse_graphs(data, fmt, source)
    if len(graphs) > 1:
        raise GraphParseError(f"expected one graph, found {len(graphs)}", source, graphs[1][0])
    return graphs[0][1]


def read_graph_file(path: str | Path, fmt: GraphFormat | str | None = None) -> list[tuple[str, MultiGraph]]:
    """
    (graph_id, graph) pairs from a file; "-" reads standard input.
    graph_id is "<file name>:<line>".
    """
    if str(path) == "-":
        data = sys.stdin.buffer.read()
        name = "<stdin>"
    else:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise GraphParseError(f"cannot read file: {exc.strerror}", str(p)) from None
        name = p.name
    return [(f"{name}:{line}", G) for line, G in parse_graphs(data, fmt, name)]


# ── Emitting ──────────────────────────────────────────────────────────────────


def emit_graph(G: MultiGraph, fmt: GraphFormat | str = GraphFormat.SPARSE6) -> bytes:
    """Encode G as one newline-terminated record."""
    fmt = GraphFormat(fmt)
    if fmt is GraphFormat.GRAPH6:
        if not is_simple(G):
            raise GraphValueError("graph6 cannot encode parallel edges; use sparse6")
        return nx.to_graph6_bytes(G.simple, header=False)
    if fmt is GraphFormat.SPARSE6:
        return nx.to_sparse6_bytes(to_networkx(G), header=False)
    body = "".join(f"{u} {v}\n" for u, v in G.edges)
    return f"{G.n} {G.m}\n{body}".encode()


def to_sparse6(G: MultiGraph) -> str:
    """Replayable sparse6 text of G (no newline)."""
    return emit_graph(G, GraphFormat.SPARSE6).decode("ascii").strip()
