"""Simple undirected graphs, products, prisms and hypercubes.

Vertices are always ``0..n-1``.  Composite vertices of a product ``G x H``
are numbered ``g * |V(H)| + h``; prism vertices ``(v, layer)`` are numbered
``layer * |V(G)| + v`` with layers stored as 0 and 1.  With this numbering
``hypercube(n)`` is index-identical to ``prism(hypercube(n - 1))`` and the
prism layer of a hypercube vertex is its highest bit.
"""

from __future__ import annotations

import enum
import hashlib
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

MAX_HYPERCUBE_DIM = 20


class GraphError(ValueError):
    """Raised for malformed graphs, graph files and vertex sets."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph with set-valued adjacency."""

    adjacency: tuple[frozenset[int], ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.adjacency)
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise GraphError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < n:
                    raise GraphError(f"neighbor {u} of {v} out of range")
                if v not in self.adjacency[u]:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for {n} vertices")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(frozenset(s) for s in adj), name)

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def __len__(self) -> int:
        return len(self.adjacency)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.vertex_count} m={self.edge_count}>"

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in sorted(self.adjacency[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open neighborhoods as bitmasks."""
        out = []
        for nbrs in self.adjacency:
            m = 0
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.masks))

    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else None."""
        degrees = {len(s) for s in self.adjacency}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def isolated_vertices(self) -> list[int]:
        return [v for v, s in enumerate(self.adjacency) if not s]

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced by ``vertices``, renumbered in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        adj = tuple(frozenset(index[u] for u in self.adjacency[v] if u in index) for v in vertices)
        return Graph(adj)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.vertex_count
        comps = []
        for root in range(self.vertex_count):
            if seen[root]:
                continue
            seen[root] = True
            comp = [root]
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for u in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(self.components()) == 1

    def distances_from(self, source: int) -> list[int]:
        """BFS distances; -1 marks unreachable vertices."""
        dist = [-1] * self.vertex_count
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for u in self.adjacency[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def to_edge_list(self) -> str:
        lines = [f"{self.vertex_count} {self.edge_count}"]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def fingerprint(self) -> str:
        """Stable short hash of the labelled edge set."""
        return hashlib.sha256(self.to_edge_list().encode()).hexdigest()[:16]


def check_vertex_set(graph: Graph, members: Iterable[int]) -> frozenset[int]:
    """Return ``members`` as a frozenset, rejecting out-of-range vertices."""
    s = frozenset(members)
    n = graph.vertex_count
    for v in s:
        if not isinstance(v, int) or not 0 <= v < n:
            raise GraphError(f"vertex {v!r} out of range for {n} vertices")
    return s


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def graph_from_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines of ``u v``.

    ``#`` starts a comment; blank lines are skipped.  Duplicate edges are
    merged.  Errors carry the 1-based line number.
    """
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphError(f"line {lineno}: negative header value")
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"line {lineno}: vertex index out of range [0, {n})")
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at vertex {a}")
        edges.append((a, b))
    if header is None:
        raise GraphError("empty edge list: missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphError(f"header announces {header[1]} edges but {len(edges)} were listed")
    return Graph.from_edges(header[0], edges)


# ---------------------------------------------------------------- families


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)], f"K{n}")


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [], f"E{n}")


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, "Petersen")


@lru_cache(maxsize=None)
def hypercube(n: int) -> Graph:
    """Q_n on ``0..2**n - 1``; bit i of a vertex is coordinate i."""
    if not 1 <= n <= MAX_HYPERCUBE_DIM:
        raise GraphError(f"hypercube dimension must be in [1, {MAX_HYPERCUBE_DIM}], got {n}")
    adj = tuple(frozenset(v ^ (1 << i) for i in range(n)) for v in range(1 << n))
    return Graph(adj, f"Q{n}")


@dataclass(frozen=True)
class HypercubeLabeling:
    """Vertex <-> binary string; the leftmost character is coordinate n-1."""

    dimension: int

    def format(self, v: int) -> str:
        return format(v, f"0{self.dimension}b")

    def parse(self, s: str) -> int:
        s = s.strip()
        if len(s) != self.dimension or set(s) - {"0", "1"}:
            raise GraphError(f"{s!r} is not a binary string of length {self.dimension}")
        return int(s, 2)


def chained_c5(k: int) -> Graph:
    """The graph G_k: ``2k`` five-cycles joined in a row by single bridges.

    Cycle ``c`` occupies vertices ``5c .. 5c+4`` in cyclic order, and the
    bridge from cycle ``c`` to cycle ``c+1`` joins ``5c+4`` to ``5(c+1)``.
    The entry and exit vertex of every inner cycle are therefore adjacent
    on that cycle, as in the drawing of G_2 x K_2.
    """
    if k < 1:
        raise GraphError("chained_c5 needs k >= 1")
    edges = []
    for c in range(2 * k):
        base = 5 * c
        edges += [(base + j, base + (j + 1) % 5) for j in range(5)]
        if c + 1 < 2 * k:
            edges.append((base + 4, base + 5))
    return Graph.from_edges(10 * k, edges, f"G{k}")


# ---------------------------------------------------------------- products


class ProductKind(enum.Enum):
    CARTESIAN = "cartesian"
    DIRECT = "direct"


@dataclass(frozen=True)
class ProductGraph:
    """A product graph with its factors and coordinate map."""

    left: Graph
    right: Graph
    kind: ProductKind
    graph: Graph = field(repr=False)

    def index(self, g: int, h: int) -> int:
        return g * self.right.vertex_count + h

    def coords(self, v: int) -> tuple[int, int]:
        return divmod(v, self.right.vertex_count)


def _product(left: Graph, right: Graph, kind: ProductKind) -> ProductGraph:
    if left.vertex_count == 0 or right.vertex_count == 0:
        raise GraphError("product factors must be non-empty")
    m = right.vertex_count
    adj = []
    for g in range(left.vertex_count):
        for h in range(m):
            if kind is ProductKind.CARTESIAN:
                nbrs = {g * m + h2 for h2 in right.adjacency[h]}
                nbrs |= {g2 * m + h for g2 in left.adjacency[g]}
            else:
                nbrs = {g2 * m + h2 for g2 in left.adjacency[g] for h2 in right.adjacency[h]}
            adj.append(frozenset(nbrs))
    op = "□" if kind is ProductKind.CARTESIAN else "×"
    name = f"{left.name or 'G'}{op}{right.name or 'H'}"
    return ProductGraph(left, right, kind, Graph(tuple(adj), name))


def cartesian_product(left: Graph, right: Graph) -> ProductGraph:
    return _product(left, right, ProductKind.CARTESIAN)


def direct_product(left: Graph, right: Graph) -> ProductGraph:
    return _product(left, right, ProductKind.DIRECT)


@dataclass(frozen=True)
class PrismGraph:
    """G □ K_2 with layer-major numbering ``layer * m + v``."""

    base: Graph
    graph: Graph = field(repr=False)

    @property
    def base_order(self) -> int:
        return self.base.vertex_count

    def vertex(self, v: int, layer: int) -> int:
        if layer not in (0, 1):
            raise GraphError(f"layer must be 0 or 1, got {layer}")
        return layer * self.base_order + v

    def coords(self, x: int) -> tuple[int, int]:
        """``(base vertex, layer)`` of prism vertex ``x``."""
        layer, v = divmod(x, self.base_order)
        return v, layer

    def fiber(self, v: int) -> frozenset[int]:
        return frozenset((v, v + self.base_order))

    def layer_vertices(self, layer: int) -> range:
        m = self.base_order
        return range(layer * m, (layer + 1) * m)


def prism(base: Graph) -> PrismGraph:
    m = base.vertex_count
    if m == 0:
        raise GraphError("prism of an empty graph")
    adj = []
    for layer in (0, 1):
        for v in range(m):
            nbrs = {layer * m + u for u in base.adjacency[v]}
            nbrs.add((1 - layer) * m + v)
            adj.append(frozenset(nbrs))
    return PrismGraph(base, Graph(tuple(adj), f"{base.name or 'G'}□K2"))


# ---------------------------------------------------------------- derived


def bipartition(graph: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """BFS 2-colouring; the smallest vertex of each component goes to A."""
    side = [-1] * graph.vertex_count
    for root in range(graph.vertex_count):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in graph.adjacency[v]:
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    a = frozenset(v for v, s in enumerate(side) if s == 0)
    b = frozenset(v for v, s in enumerate(side) if s == 1)
    return a, b


class Neighborhood(enum.Enum):
    CLOSED = "closed"
    OPEN = "open"


def conflict_graph(graph: Graph, kind: Neighborhood) -> Graph:
    """Graph whose independent sets are the 2-packings (CLOSED) or open packings (OPEN)."""
    nbhd = graph.closed_masks if kind is Neighborhood.CLOSED else graph.masks
    # u, v conflict iff some w lies in both neighborhoods, i.e. u, v in N(w) (or N[w])
    conflict = [0] * graph.vertex_count
    for w in range(graph.vertex_count):
        members = from_mask(nbhd[w])
        m = nbhd[w]
        for u in members:
            conflict[u] |= m
    adj = tuple(frozenset(from_mask(m & ~(1 << v))) for v, m in enumerate(conflict))
    return Graph(adj, f"conflict[{kind.value}]({graph.name})")
