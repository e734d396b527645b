"""
Brickyard — CLI Entry Point

  python -m brickyard analyze   cubic8.g6
  python -m brickyard decompose --tree graph.s6
  python -m brickyard verify    --theorem 2 --atlas 4:7 --doubled
  python -m brickyard lemmas    --census --atlas 4:7
  python -m brickyard extremal  cubic8.g6

Reports go to standard output as JSON lines (one object per graph or
lemma); --pretty switches to one indented document. Logs and rich
renderings go to standard error.

Exit codes:
  0  success
  1  a size cap was exceeded
  2  malformed, unreadable or empty input
  3  a theorem or lemma violation was found
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, Iterator, Sequence, TypeVar

from rich.console import Console
from rich.table import Table

from .analysis import analyze, to_dot, to_rich_tree
from .config import get_limits, get_settings, set_limits
from .corpus import build_corpus, parse_range
from .errors import BrickyardError, CapExceededError
from .graphio import GraphFormat, to_sparse6
from .matching import is_matching_covered
from .theorems import (
    CorpusEntry,
    ExtremalWitness,
    LemmaId,
    LemmaReport,
    TheoremVerdict,
    check_lemmas,
    classify_witness,
    four_vertex_census,
    merge_reports,
    summarize,
    verify_theorem,
    verify_theorem2,
)
from .tightcuts import LeafKind, leaves, tight_cut_decomposition

log = logging.getLogger("brickyard.cli")

EXIT_OK = 0
EXIT_CAP = 1
EXIT_INPUT = 2
EXIT_VIOLATION = 3

T = TypeVar("T")
R = TypeVar("R")


def _setup_logging(verbose: bool, quiet: bool) -> None:
    if verbose:
        level: int | str = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = str(get_settings().get("logging", {}).get("level", "INFO")).upper()
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s — %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


# ── Output ────────────────────────────────────────────────────────────────────


class _Emitter:
    """JSON lines by default; with --pretty everything is buffered into one document."""

    def __init__(self, pretty: bool) -> None:
        self.pretty = pretty
        self.buffer: list[Any] = []

    def emit(self, obj: Any) -> None:
        if self.pretty:
            self.buffer.append(obj)
        else:
            sys.stdout.write(json.dumps(obj) + "\n")

    def close(self, wrap: Callable[[list[Any]], Any] | None = None) -> None:
        if self.pretty:
            doc = wrap(self.buffer) if wrap else self.buffer
            sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        sys.stdout.flush()


def _stderr_console(args: argparse.Namespace) -> Console | None:
    return None if args.quiet else Console(stderr=True)


# ── Workers ───────────────────────────────────────────────────────────────────


def _run(func: Callable[[T], R], items: Sequence[T], jobs: int) -> Iterator[R]:
    """Apply func to items, results in input order; a process pool when jobs > 1."""
    if jobs <= 1 or len(items) <= 1:
        for item in items:
            yield func(item)
        return
    pool = ProcessPoolExecutor(max_workers=jobs, initializer=set_limits, initargs=(get_limits(),))
    try:
        yield from pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs)))
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def _analyze_job(entry: CorpusEntry) -> dict[str, Any]:
    graph_id, G = entry
    return analyze(G, graph_id).to_dict()


def _decompose_job(entry: CorpusEntry) -> tuple[str, Any]:
    graph_id, G = entry
    if not is_matching_covered(G):
        return graph_id, None
    return graph_id, tight_cut_decomposition(G)


def _verify_job(entry: CorpusEntry, theorem: int) -> tuple[TheoremVerdict, str | None]:
    graph_id, G = entry
    verdict = verify_theorem(G, theorem, graph_id)
    return verdict, to_sparse6(G) if verdict.violated else None


def _lemma_job(entry: CorpusEntry) -> list[LemmaReport]:
    graph_id, G = entry
    return check_lemmas(graph_id, G)


def _extremal_job(entry: CorpusEntry) -> ExtremalWitness | None:
    graph_id, G = entry
    return classify_witness(G, verify_theorem2(G, graph_id))


# ── Commands ──────────────────────────────────────────────────────────────────


def _corpus(args: argparse.Namespace, allow_empty: bool = False) -> list[CorpusEntry]:
    atlas = parse_range(args.atlas) if args.atlas else None
    entries = build_corpus(
        paths=args.paths,
        fmt=args.format,
        atlas=atlas,
        doubled=args.doubled,
        bisubdivided=args.bisubdivided,
        max_n=get_limits().max_n,
    )
    if not args.paths and atlas is None and not allow_empty:
        raise BrickyardError("no input: give graph files, '-' for stdin, or --atlas MIN:MAX")
    log.info(f"> CLI: corpus of {len(entries)} graph(s)")
    return entries


def _cmd_analyze(args: argparse.Namespace) -> int:
    out = _Emitter(args.pretty)
    for report in _run(_analyze_job, _corpus(args), args.jobs):
        out.emit(report)
    out.close()
    return EXIT_OK


def _cmd_decompose(args: argparse.Namespace) -> int:
    out = _Emitter(args.pretty)
    console = _stderr_console(args) if args.tree else None
    for graph_id, tree in _run(_decompose_job, _corpus(args), args.jobs):
        if tree is None:
            log.warning(f"> CLI: {graph_id} is not matching covered, no decomposition")
            if not args.dot:
                out.emit({"input_id": graph_id, "matching_covered": False, "b": None, "decomposition": None})
            continue
        if console is not None:
            console.print(to_rich_tree(tree, graph_id))
        if args.dot:
            sys.stdout.write(to_dot(tree, graph_id))
            continue
        out.emit({
            "input_id": graph_id,
            "matching_covered": True,
            "b": sum(1 for leaf in leaves(tree) if leaf.leaf_kind is LeafKind.BRICK),
            "decomposition": tree.to_dict(),
        })
    if not args.dot:
        out.close()
    return EXIT_OK


def _summary_table(title: str, rows: Sequence[tuple[str, ...]], headers: Sequence[str]) -> Table:
    table = Table(title=title)
    for header in headers:
        table.add_column(header)
    for row in rows:
        table.add_row(*row)
    return table


def _cmd_verify(args: argparse.Namespace) -> int:
    out = _Emitter(args.pretty)
    verdicts: list[TheoremVerdict] = []
    job = partial(_verify_job, theorem=args.theorem)
    for verdict, encoding in _run(job, _corpus(args), args.jobs):
        verdicts.append(verdict)
        record = verdict.to_dict()
        if encoding is not None:
            record["sparse6"] = encoding
        out.emit(record)
        if args.fail_fast and verdict.violated:
            log.error(f"> CLI: stopping at first violation ({verdict.graph_id})")
            break
    summary = summarize(verdicts)
    if args.pretty:
        out.close(lambda buffered: {"verdicts": buffered, "summary": summary})
    else:
        out.emit({"summary": summary})
        out.close()

    console = _stderr_console(args)
    if console is not None:
        console.print(_summary_table(
            f"Theorem {args.theorem}",
            [(key, str(summary[key])) for key in ("graphs", "hypothesis_holds", "satisfied", "sharp")]
            + [("violations", str(len(summary["violations"])))],
            ("", "count"),
        ))
    return EXIT_VIOLATION if summary["violations"] else EXIT_OK


def _cmd_lemmas(args: argparse.Namespace) -> int:
    entries = _corpus(args, allow_empty=True)
    reports = merge_reports(_run(_lemma_job, entries, args.jobs))
    if args.census:
        census = next(r for r in reports if r.lemma_id is LemmaId.FOUR_VERTEX_CENSUS)
        census.merge(four_vertex_census())

    out = _Emitter(args.pretty)
    for report in reports:
        out.emit(report.to_dict())
    out.close()

    console = _stderr_console(args)
    if console is not None:
        console.print(_summary_table(
            "Lemma suite",
            [
                (r.lemma_id.value, str(r.instances_checked), str(r.skipped), str(len(r.violations)))
                for r in reports
            ],
            ("lemma", "checked", "skipped", "violations"),
        ))
    return EXIT_OK if all(r.clean for r in reports) else EXIT_VIOLATION


def _cmd_extremal(args: argparse.Namespace) -> int:
    out = _Emitter(args.pretty)
    for witness in _run(_extremal_job, _corpus(args), args.jobs):
        if witness is not None:
            out.emit(witness.to_dict())
    out.close()
    return EXIT_OK


# ── Parser ────────────────────────────────────────────────────────────────────


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("paths", nargs="*", help="Graph files ('-' reads standard input).")
    common.add_argument(
        "--format",
        choices=[f.value for f in GraphFormat],
        default=None,
        help="Input format (default: from the file extension, then the content).",
    )
    common.add_argument("--atlas", metavar="MIN:MAX", help="Add the connected atlas graphs of these orders (n <= 7).")
    common.add_argument("--doubled", action="store_true", help="Add every one-edge doubling of the matching covered inputs.")
    common.add_argument("--bisubdivided", action="store_true", help="Add the matching covered bisubdivisions of the inputs.")
    common.add_argument("--max-n", type=_positive, default=None, help="Cap for the tight-cut scan and isomorphism.")
    common.add_argument("--max-pm-enum", type=_positive, default=None, help="Cap for perfect-matching enumeration.")
    common.add_argument("--pretty", action="store_true", help="One indented JSON document instead of JSON lines.")
    common.add_argument("--jobs", type=_positive, default=1, help="Worker processes (output stays in input order).")
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")
    noise.add_argument("-q", "--quiet", action="store_true", help="Warnings only, no rich summaries.")

    parser = argparse.ArgumentParser(
        prog="brickyard",
        description="Brickyard — removable edges, tight cuts and brick decompositions of matching covered graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="Full report per graph.")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("decompose", parents=[common], help="Tight cut decomposition tree per graph.")
    p.add_argument("--dot", action="store_true", help="Write Graphviz DOT instead of JSON.")
    p.add_argument("--tree", action="store_true", help="Render the tree on standard error.")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="Check a Δ−2 theorem over a corpus.")
    p.add_argument("--theorem", type=int, choices=(1, 2), default=2, help="1: bricks, 2: irreducible near-bricks.")
    p.add_argument("--fail-fast", action="store_true", help="Stop at the first violation.")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("lemmas", parents=[common], help="Run the lemma suite over a corpus.")
    p.add_argument("--census", action="store_true", help="Also enumerate all 64 labeled 4-vertex graphs.")
    p.set_defaults(handler=_cmd_lemmas)

    p = sub.add_parser("extremal", parents=[common], help="Sharp and irreducibility-needed witnesses.")
    p.set_defaults(handler=_cmd_extremal)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose, args.quiet)
    set_limits(max_n=args.max_n, max_pm_enum=args.max_pm_enum)

    try:
        return args.handler(args)
    except CapExceededError as exc:
        log.error(f"> CLI: {exc}")
        return EXIT_CAP
    except BrickyardError as exc:
        log.error(f"> CLI: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
