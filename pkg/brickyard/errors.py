"""
Brickyard — Exception Hierarchy

Library code raises these; only the CLI translates them into exit codes.
Harness code (lemma suite, theorem verification) records violations
instead of raising.
"""

from __future__ import annotations


class BrickyardError(Exception):
    """Base class for every error raised by the brickyard package."""


class GraphValueError(BrickyardError, ValueError):
    """Raised when an argument does not describe a valid graph object
    (vertex or EdgeId out of range, degenerate shore, loop, bad ear)."""


class NotMatchingCoveredError(BrickyardError, ValueError):
    """Raised when an operation requires a matching covered graph."""


class CapExceededError(BrickyardError):
    """Raised when an exhaustive routine would exceed its size cap.

    Oracles must be complete or absent, so caps never truncate silently.
    """

    def __init__(self, cap: str, limit: int, actual: int) -> None:
        self.cap = cap
        self.limit = limit
        self.actual = actual
        super().__init__(f"{cap} cap exceeded: n={actual} > {limit}")

    def __reduce__(self):
        return type(self), (self.cap, self.limit, self.actual)


class GraphParseError(BrickyardError, ValueError):
    """Raised on malformed graph input.

    `source` names the file (or "<stdin>"), `line` is 1-based, `edge` is
    the 0-based edge index within the graph when the fault is an edge.
    """

    def __init__(
        self,
        message: str,
        source: str = "<input>",
        line: int | None = None,
        edge: int | None = None,
    ) -> None:
        self.message = message
        self.source = source
        self.line = line
        self.edge = edge
        where = source
        if line is not None:
            where += f":{line}"
        if edge is not None:
            where += f" (edge {edge})"
        super().__init__(f"{where}: {message}")

    def __reduce__(self):
        return type(self), (self.message, self.source, self.line, self.edge)
