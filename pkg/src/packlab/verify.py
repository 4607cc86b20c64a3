"""Certificate checkers for packings, dominating sets, codes and colorings.

All checkers work straight from the definitions and report the first
violation found, so that a failed certificate can be explained.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, GraphError, check_vertex_set


class SetKind(enum.Enum):
    TWO_PACKING = "two-packing"
    OPEN_PACKING = "open-packing"
    DOMINATING = "dominating"
    TOTAL_DOMINATING = "total-dominating"
    PERFECT_CODE = "perfect-code"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple[int, ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


PASS = Verdict(True)


def _disjoint_neighborhoods(graph: Graph, members: frozenset[int], closed: bool) -> Verdict:
    owner: dict[int, int] = {}
    for x in sorted(members):
        nbhd = graph.closed_neighbors(x) if closed else graph.neighbors(x)
        for w in sorted(nbhd):
            if w in owner:
                y = owner[w]
                if closed and w in (x, y):
                    reason = f"vertices {y} and {x} are adjacent"
                else:
                    kind = "closed neighbor" if closed else "common neighbor"
                    reason = f"vertices {y} and {x} share {kind} {w}"
                return Verdict(False, (y, x, w), reason)
            owner[w] = x
    return PASS


def verify_set(graph: Graph, members: Iterable[int], kind: SetKind) -> Verdict:
    """Check ``members`` against the defining condition of ``kind``.

    The witness of a failed packing check is ``(x, y, w)`` with ``w`` in both
    neighborhoods; a failed domination check reports the undominated vertex.
    """
    s = check_vertex_set(graph, members)
    if kind is SetKind.TWO_PACKING:
        return _disjoint_neighborhoods(graph, s, closed=True)
    if kind is SetKind.OPEN_PACKING:
        return _disjoint_neighborhoods(graph, s, closed=False)
    if kind is SetKind.DOMINATING:
        for v in range(graph.vertex_count):
            if v not in s and not (graph.neighbors(v) & s):
                return Verdict(False, (v,), f"vertex {v} is not dominated")
        return PASS
    if kind is SetKind.TOTAL_DOMINATING:
        isolated = graph.isolated_vertices()
        if isolated:
            raise GraphError(f"total domination undefined: vertex {isolated[0]} is isolated")
        for v in range(graph.vertex_count):
            if not (graph.neighbors(v) & s):
                return Verdict(False, (v,), f"vertex {v} has no neighbor in the set")
        return PASS
    if kind is SetKind.PERFECT_CODE:
        packing = _disjoint_neighborhoods(graph, s, closed=True)
        if not packing:
            return packing
        covered = set()
        for x in s:
            covered |= graph.closed_neighbors(x)
        for v in range(graph.vertex_count):
            if v not in covered:
                return Verdict(False, (v,), f"vertex {v} is not covered by any closed neighborhood")
        return PASS
    raise ValueError(f"unknown set kind {kind!r}")


@dataclass(frozen=True)
class Partition:
    """Ordered vertex classes; structural validity is checked against a graph."""

    classes: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]]) -> Partition:
        return cls(tuple(frozenset(c) for c in classes))

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def structure_error(self, vertex_count: int) -> str | None:
        seen: dict[int, int] = {}
        for i, cls_ in enumerate(self.classes):
            if not cls_:
                return f"class {i} is empty"
            for v in sorted(cls_):
                if not 0 <= v < vertex_count:
                    return f"vertex {v} in class {i} out of range"
                if v in seen:
                    return f"vertex {v} appears in classes {seen[v]} and {i}"
                seen[v] = i
        if len(seen) != vertex_count:
            missing = min(set(range(vertex_count)) - seen.keys())
            return f"vertex {missing} is not covered"
        return None


def verify_injective_coloring(graph: Graph, partition: Partition | Sequence[Iterable[int]]) -> Verdict:
    """True iff every class is an open packing; witness starts with the class index."""
    if not isinstance(partition, Partition):
        partition = Partition.of(partition)
    problem = partition.structure_error(graph.vertex_count)
    if problem:
        raise GraphError(f"not a partition: {problem}")
    return verify_partition_classes(graph, partition, SetKind.OPEN_PACKING)


def verify_partition_classes(graph: Graph, partition: Partition, kind: SetKind) -> Verdict:
    for i, cls_ in enumerate(partition.classes):
        v = verify_set(graph, cls_, kind)
        if not v:
            return Verdict(False, (i, *v.witness), f"class {i}: {v.message}")
    return PASS
