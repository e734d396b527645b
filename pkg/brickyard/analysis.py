"""
Brickyard — Per-Graph Analysis Reports

AnalysisReport bundles everything the CLI prints for one input graph:
classification, removable edges (as endpoint pairs with multiplicity
index), the brick count, the decomposition tree and the Theorem 2
verdict. Also renders decomposition trees as DOT and as rich trees.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import count
from typing import Any

from rich.markup import escape
from rich.tree import Tree

from .classify import GraphClass, classify
from .matching import removable_edges
from .multigraph import MultiGraph, max_degree, multiplicity_index
from .theorems import TheoremVerdict, verify_theorem2
from .tightcuts import DecompositionNode, LeafKind, leaves, tight_cut_decomposition

log = logging.getLogger("brickyard.analysis")


@dataclass
class AnalysisReport:
    input_id: str
    n: int
    m: int
    delta: int
    graph_class: GraphClass
    removable_edges: list[tuple[int, int, int]] | None     # (u, v, multiplicity index)
    b: int | None
    decomposition: DecompositionNode | None
    theorem2: TheoremVerdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "input_id": self.input_id,
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "class": self.graph_class.to_dict(),
            "removable_edges": (
                [list(edge) for edge in self.removable_edges]
                if self.removable_edges is not None else None
            ),
            "b": self.b,
            "decomposition": self.decomposition.to_dict() if self.decomposition else None,
            "theorem2": self.theorem2.to_dict(),
        }


def analyze(G: MultiGraph, input_id: str = "") -> AnalysisReport:
    """Full report for one graph. Non-matching-covered graphs get null RE, b and tree."""
    graph_class = classify(G)
    verdict = verify_theorem2(G, input_id)
    re_list: list[tuple[int, int, int]] | None = None
    b: int | None = None
    tree: DecompositionNode | None = None
    if graph_class.matching_covered:
        re_list = sorted(
            (min(G.edges[e]), max(G.edges[e]), multiplicity_index(G, e))
            for e in removable_edges(G)
        )
        tree = tight_cut_decomposition(G)
        b = sum(1 for leaf in leaves(tree) if leaf.leaf_kind is LeafKind.BRICK)
    log.debug(f"> ANALYSIS: {input_id} n={G.n} m={G.m} b={b}")
    return AnalysisReport(
        input_id=input_id,
        n=G.n,
        m=G.m,
        delta=max_degree(G),
        graph_class=graph_class,
        removable_edges=re_list,
        b=b,
        decomposition=tree,
        theorem2=verdict,
    )


# ── Tree Rendering ────────────────────────────────────────────────────────────


def _node_label(node: DecompositionNode) -> str:
    if node.is_leaf:
        return f"{node.leaf_kind.value} n={node.graph.n} m={node.graph.m}"
    assert node.split is not None
    shore = ",".join(str(v) for v in sorted(node.split.shore))
    return f"cut {{{shore}}} n={node.graph.n} m={node.graph.m}"


def to_dot(tree: DecompositionNode, name: str = "decomposition") -> str:
    """Graphviz digraph of a decomposition tree; node ids in preorder."""
    ids = count()
    quoted = name.replace("\\", "\\\\").replace('"', '\\"')
    lines = [f'digraph "{quoted}" {{']

    def emit(node: DecompositionNode) -> int:
        own = next(ids)
        shape = "box" if node.is_leaf else "ellipse"
        lines.append(f'  n{own} [label="{_node_label(node)}", shape={shape}];')
        for child in node.children:
            lines.append(f"  n{own} -> n{emit(child)};")
        return own

    emit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_rich_tree(tree: DecompositionNode, title: str = "") -> Tree:
    style = {LeafKind.BRICK: "bold red", LeafKind.BRACE: "bold blue", LeafKind.NONE: "white"}

    def attach(parent: Tree, node: DecompositionNode) -> None:
        branch = parent.add(f"[{style[node.leaf_kind]}]{_node_label(node)}[/]")
        for child in node.children:
            attach(branch, child)

    root = Tree(f"[{style[tree.leaf_kind]}]{escape(title or 'G')}: {_node_label(tree)}[/]")
    for child in tree.children:
        attach(root, child)
    return root
