"""Certificate and partition file formats.

Vertex sets are one vertex per line, partitions one class per line with
whitespace-separated members.  Hypercube vertices are written as binary
strings (leftmost character = highest coordinate), all other vertices as
decimal indices.  ``#`` starts a comment.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .graph import Graph, GraphError, HypercubeLabeling, check_vertex_set
from .verify import Partition


def _token(v: int, labeling: HypercubeLabeling | None) -> str:
    return labeling.format(v) if labeling else str(v)


def _parse(token: str, labeling: HypercubeLabeling | None, lineno: int) -> int:
    try:
        return labeling.parse(token) if labeling else int(token)
    except (GraphError, ValueError):
        expected = f"binary string of length {labeling.dimension}" if labeling else "decimal vertex index"
        raise GraphError(f"line {lineno}: expected a {expected}, got {token!r}") from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def format_vertex_set(members, labeling: HypercubeLabeling | None = None) -> str:
    return "".join(_token(v, labeling) + "\n" for v in sorted(members))


def parse_vertex_set(text: str, graph: Graph, labeling: HypercubeLabeling | None = None) -> frozenset[int]:
    out = []
    for lineno, line in _content_lines(text):
        for token in line.split():
            out.append(_parse(token, labeling, lineno))
    return check_vertex_set(graph, out)


def format_partition(partition: Partition, labeling: HypercubeLabeling | None = None) -> str:
    return "".join(" ".join(_token(v, labeling) for v in sorted(c)) + "\n" for c in partition)


def parse_partition(text: str, graph: Graph, labeling: HypercubeLabeling | None = None) -> Partition:
    classes = []
    for lineno, line in _content_lines(text):
        cls_ = [_parse(token, labeling, lineno) for token in line.split()]
        classes.append(check_vertex_set(graph, cls_))
    return Partition(tuple(classes))


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
