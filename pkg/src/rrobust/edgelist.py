"""Edge-list text format.

First line ``n m`` (node count, edge count), then m lines ``i j``, each a
directed edge from i to j (i an in-neighbor of j).  Indices are 1-based,
fields space-separated ASCII, lines end with ``\\n``.  Lines starting with
``#`` are comments and are ignored wherever they appear.  The writer emits
edges sorted lexicographically so equal graphs serialize bit-identically.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable

from .graph import Digraph, GraphError


class EdgeListError(GraphError):
    """Malformed edge-list input; carries the offending 1-based line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_edgelist(lines: Iterable[str]) -> Digraph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    header_line = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise EdgeListError(lineno, f"expected header 'n m', got {line!r}")
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise EdgeListError(lineno, f"non-integer header field in {line!r}") from None
            if n < 0 or m < 0:
                raise EdgeListError(lineno, f"negative count in header {line!r}")
            header = (n, m)
            header_line = lineno
            continue
        if len(fields) != 2:
            raise EdgeListError(lineno, f"expected edge 'i j', got {line!r}")
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListError(lineno, f"non-integer edge field in {line!r}") from None
        if len(edges) >= header[1]:
            raise EdgeListError(lineno, f"more than the declared {header[1]} edges")
        if not (1 <= i <= header[0] and 1 <= j <= header[0]):
            raise EdgeListError(lineno, f"edge ({i}, {j}) out of range for n={header[0]}")
        if i == j:
            raise EdgeListError(lineno, f"self-loop ({i}, {j}) not allowed")
        if (i, j) in seen:
            raise EdgeListError(lineno, f"duplicate edge ({i}, {j})")
        seen.add((i, j))
        edges.append((i, j))
    if header is None:
        raise EdgeListError(1, "missing 'n m' header")
    if len(edges) != header[1]:
        raise EdgeListError(
            header_line, f"header declares {header[1]} edges but {len(edges)} were given"
        )
    try:
        return Digraph(header[0], edges)
    except GraphError as exc:
        raise EdgeListError(header_line, str(exc)) from None


def read_edgelist(path: str | Path) -> Digraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_edgelist(fh)


def format_edgelist(d: Digraph) -> str:
    out = io.StringIO()
    out.write(f"{d.n} {d.edge_count}\n")
    for i, j in d.edges():
        out.write(f"{i} {j}\n")
    return out.getvalue()


def write_edgelist(d: Digraph, path: str | Path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(format_edgelist(d))
