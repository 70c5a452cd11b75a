"""Plain-text formats for graphs, relations and posets.

    graph N | digraph N      relation SRC DST      poset K
    u v                      u b                   l1 l2 ... lK
    ...                      ...                   a b   (a covered by b, on labels)

``#`` starts a comment; blank lines are ignored. Undirected edges are listed
once, loops as ``v v``.
"""
from __future__ import annotations

import sys
from pathlib import Path
from typing import Iterator, List, Optional, Tuple

from .errors import FormatError, InvalidParameter, RelgraphError
from .graph import Graph
from .posets import Poset
from .relations import Relation

STDIN = "<stdin>"


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def _ints(tokens: List[str], count: int, path: Optional[str], line: int) -> List[int]:
    if len(tokens) != count:
        raise FormatError(f"expected {count} integers, got {len(tokens)} tokens", path, line)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"not an integer in {' '.join(tokens)!r}", path, line) from None


def _header(rows: List[Tuple[int, List[str]]], keywords: Tuple[str, ...], arity: int, path: Optional[str]):
    if not rows:
        raise FormatError(f"empty input, expected a '{keywords[0]}' header", path, 1)
    line, tokens = rows[0]
    if tokens[0] not in keywords:
        raise FormatError(f"header must start with one of {', '.join(keywords)}", path, line)
    values = _ints(tokens[1:], arity, path, line)
    if any(v < 0 for v in values):
        raise FormatError("sizes must be non-negative", path, line)
    return tokens[0], values


def parse_graph(text: str, path: Optional[str] = None) -> Graph:
    rows = list(_lines(text))
    kind, (n,) = _header(rows, ("graph", "digraph"), 1, path)
    edges = []
    for line, tokens in rows[1:]:
        u, v = _ints(tokens, 2, path, line)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge ({u}, {v}) out of range for {n} vertices", path, line)
        edges.append((u, v))
    return Graph.from_edges(n, edges, directed=kind == "digraph")


def dump_graph(g: Graph) -> str:
    lines = [f"{'digraph' if g.directed else 'graph'} {g.n}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_relation(text: str, path: Optional[str] = None) -> Relation:
    rows = list(_lines(text))
    _, (src, dst) = _header(rows, ("relation",), 2, path)
    pairs = []
    for line, tokens in rows[1:]:
        x, b = _ints(tokens, 2, path, line)
        if not (0 <= x < src and 0 <= b < dst):
            raise FormatError(f"pair ({x}, {b}) out of range {src} x {dst}", path, line)
        pairs.append((x, b))
    return Relation.of(src, dst, pairs)


def dump_relation(r: Relation) -> str:
    lines = [f"relation {r.src_n} {r.dst_n}"] + [f"{x} {b}" for x, b in sorted(r.pairs)]
    return "\n".join(lines) + "\n"


def parse_poset(text: str, path: Optional[str] = None) -> Poset:
    rows = list(_lines(text))
    _, (k,) = _header(rows, ("poset",), 1, path)
    if k == 0:
        covers_from = 1
        labels: List[int] = []
    else:
        if len(rows) < 2:
            raise FormatError("missing label line", path, rows[0][0])
        line, tokens = rows[1]
        labels = _ints(tokens, k, path, line)
        covers_from = 2
    covers = []
    for line, tokens in rows[covers_from:]:
        a, b = _ints(tokens, 2, path, line)
        if a not in labels or b not in labels:
            raise FormatError(f"cover pair ({a}, {b}) names an unknown label", path, line)
        covers.append((a, b))
    try:
        return Poset.from_covers(labels, covers)
    except (InvalidParameter, RelgraphError) as exc:
        raise FormatError(str(exc), path, rows[0][0]) from exc


def dump_poset(p: Poset) -> str:
    lines = [f"poset {len(p.labels)}"]
    if p.labels:
        lines.append(" ".join(str(x) for x in p.labels))
    lines += [f"{a} {b}" for a, b in p.cover_pairs()]
    return "\n".join(lines) + "\n"


def _decode(data: bytes, path: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[:exc.start].count(b"\n") + 1
        raise FormatError(f"not valid UTF-8 (byte {data[exc.start]:#04x})", path, line) from None


def _read(path: str | Path) -> Tuple[str, str]:
    """Text and display name of ``path``; ``-`` reads standard input."""
    if str(path) == "-":
        stream = getattr(sys.stdin, "buffer", None)
        if stream is None:
            return sys.stdin.read(), STDIN
        return _decode(stream.read(), STDIN), STDIN
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", str(path)) from exc
    return _decode(data, str(path)), str(path)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(*_read(path))


def read_relation(path: str | Path) -> Relation:
    return parse_relation(*_read(path))


def read_poset(path: str | Path) -> Poset:
    return parse_poset(*_read(path))
