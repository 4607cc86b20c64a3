"""Packing constructions on prisms and hypercubes.

Every function checks its output with the verifiers before returning it.
Hypercube sets are integers in the labelling of :func:`packlab.graph.hypercube`,
where ``Q_n`` is the prism over ``Q_{n-1}`` and the prism layer is the top bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .graph import (
    Graph,
    GraphError,
    HypercubeLabeling,
    PrismGraph,
    chained_c5,
    check_vertex_set,
    hypercube,
    prism,
)
from .verify import Partition, SetKind, verify_set


class ConstructionError(ValueError):
    """Input to a construction fails its precondition."""


def _require(graph: Graph, members, kind: SetKind, what: str) -> frozenset[int]:
    s = check_vertex_set(graph, members)
    verdict = verify_set(graph, s, kind)
    if not verdict:
        raise ConstructionError(f"{what} is not a {kind.value}: {verdict.message}")
    return s


def _self_check(graph: Graph, members, kind: SetKind) -> frozenset[int]:
    s = frozenset(members)
    verdict = verify_set(graph, s, kind)
    if not verdict:
        raise AssertionError(f"construction produced an invalid {kind.value}: {verdict.message}")
    return s


def double_packing(graph: Graph, packing, prism_graph: PrismGraph | None = None) -> frozenset[int]:
    """Lift a 2-packing P of G to the open packing P x V(K_2) of the prism."""
    p = _require(graph, packing, SetKind.TWO_PACKING, "input set")
    pg = prism_graph or prism(graph)
    out = {pg.vertex(v, layer) for v in p for layer in (0, 1)}
    return _self_check(pg.graph, out, SetKind.OPEN_PACKING)


def project_packing_to_layer(prism_graph: PrismGraph, packing) -> frozenset[int]:
    """Base copy of the layer holding at least half of a prism 2-packing.

    Ties go to the first layer (internal layer 0).
    """
    s = _require(prism_graph.graph, packing, SetKind.TWO_PACKING, "input set")
    layers: list[list[int]] = [[], []]
    for x in s:
        v, layer = prism_graph.coords(x)
        layers[layer].append(v)
    chosen = layers[0] if len(layers[0]) >= len(layers[1]) else layers[1]
    return _self_check(prism_graph.base, chosen, SetKind.TWO_PACKING)


# ---------------------------------------------------------------- prism transform


@dataclass
class TransformTrace:
    """Where each vertex of the open packing O went.

    ``classes`` maps names like ``"I1A"`` or ``"R2B"`` to base vertices,
    using the layer numbering *after* any swap.
    """

    classes: dict[str, frozenset[int]] = field(default_factory=dict)
    swapped: bool = False
    result: frozenset[int] = frozenset()
    kept: dict[str, frozenset[int]] = field(default_factory=dict)


def bipartite_prism_transform(graph: Graph, part_a, part_b, open_packing,
                              prism_graph: PrismGraph | None = None) -> tuple[frozenset[int], TransformTrace]:
    """Turn an open packing O of G □ K_2 (G bipartite) into a 2-packing P' of G.

    P' x V(K_2) is again an open packing and ``2|P'| >= |O|``.  Vertices of O
    isolated in O form I, matched ones form R.  With layers labelled so that
    ``|I1A| + |I2B| >= |I2A| + |I1B|`` the fibres of I1A, I2B and of same-fibre
    R pairs are kept, I2A and I1B are dropped, and for an in-layer R pair the
    A end is kept in layer 1 and the B end in layer 2.
    """
    a = frozenset(part_a)
    b = frozenset(part_b)
    n = graph.vertex_count
    if a & b or (a | b) != frozenset(range(n)):
        raise ConstructionError("A and B must partition the vertex set")
    for u, v in graph.edges():
        if (u in a) == (v in a):
            raise ConstructionError(f"edge {u}-{v} lies inside one side of the bipartition")
    pg = prism_graph or prism(graph)
    o = _require(pg.graph, open_packing, SetKind.OPEN_PACKING, "input set")

    mates: dict[int, int] = {}
    for x in o:
        inside = pg.graph.neighbors(x) & o
        if len(inside) > 1:
            raise AssertionError(f"vertex {x} has {len(inside)} neighbors in an open packing")
        if inside:
            mates[x] = next(iter(inside))

    def side(v: int) -> str:
        return "A" if v in a else "B"

    counts = {f"I{layer + 1}{s}": 0 for layer in (0, 1) for s in "AB"}
    for x in o:
        if x not in mates:
            v, layer = pg.coords(x)
            counts[f"I{layer + 1}{side(v)}"] += 1
    swapped = counts["I1A"] + counts["I2B"] < counts["I2A"] + counts["I1B"]

    def where(x: int) -> tuple[int, int]:
        v, layer = pg.coords(x)
        return v, (1 - layer if swapped else layer) + 1

    classes: dict[str, set[int]] = {f"{t}{layer}{s}": set() for t in "IR" for layer in (1, 2) for s in "AB"}
    kept: dict[str, set[int]] = {"I": set(), "fiber": set(), "layer1": set(), "layer2": set()}
    for x in sorted(o):
        v, layer = where(x)
        tag = "R" if x in mates else "I"
        classes[f"{tag}{layer}{side(v)}"].add(v)
        if tag == "I":
            if (layer, side(v)) in ((1, "A"), (2, "B")):
                kept["I"].add(v)
            continue
        u, mate_layer = where(mates[x])
        if u == v:
            kept["fiber"].add(v)
        elif mate_layer != layer:
            raise AssertionError("matched vertices of an open packing must share a fibre or a layer")
        elif layer == 1 and side(v) == "A":
            kept["layer1"].add(v)
        elif layer == 2 and side(v) == "B":
            kept["layer2"].add(v)

    result = frozenset().union(*kept.values())
    trace = TransformTrace(
        classes={k: frozenset(v) for k, v in classes.items()},
        swapped=swapped,
        result=result,
        kept={k: frozenset(v) for k, v in kept.items()},
    )
    _self_check(graph, result, SetKind.TWO_PACKING)
    doubled = {pg.vertex(v, layer) for v in result for layer in (0, 1)}
    _self_check(pg.graph, doubled, SetKind.OPEN_PACKING)
    if 2 * len(result) < len(o):
        raise AssertionError(f"transform shrank the packing: 2*{len(result)} < {len(o)}")
    return result, trace


# ---------------------------------------------------------------- Hamming codes

MAX_HAMMING_K = 4


def _check_k(k: int) -> int:
    if not 2 <= k <= MAX_HAMMING_K:
        raise ConstructionError(f"Hamming parameter k must be in [2, {MAX_HAMMING_K}], got {k}")
    return (1 << k) - 1


def syndrome(x: int) -> int:
    """Parity-check syndrome: column j of H is j in binary, coordinate i uses column i+1."""
    s = 0
    i = 0
    while x:
        if x & 1:
            s ^= i + 1
        x >>= 1
        i += 1
    return s


@lru_cache(maxsize=None)
def hamming_perfect_code(k: int) -> frozenset[int]:
    """The Hamming code {x : Hx = 0} in Q_{2^k - 1}, a 1-perfect code."""
    n = _check_k(k)
    code = frozenset(x for x in range(1 << n) if syndrome(x) == 0)
    return _self_check(hypercube(n), code, SetKind.PERFECT_CODE)


def hamming_coset_partition(k: int) -> Partition:
    """The 2^k cosets of the Hamming code, ordered by syndrome; each is a perfect code."""
    n = _check_k(k)
    q = hypercube(n)
    classes: list[set[int]] = [set() for _ in range(1 << k)]
    for x in range(1 << n):
        classes[syndrome(x)].add(x)
    partition = Partition.of(classes)
    for cls_ in partition:
        _self_check(q, cls_, SetKind.PERFECT_CODE)
    return partition


# ---------------------------------------------------------------- hypercube bounds


def floor_log2(x: int) -> int:
    return x.bit_length() - 1


def projected_code_size(n: int) -> int:
    return 2 ** (n - floor_log2(n) - 1)


def doubled_projected_code_size(n: int) -> int:
    return 2 ** (n - floor_log2(n - 1) - 1)


MAX_CONSTRUCTION_DIM = 15


def _projected_code(n: int) -> frozenset[int]:
    k = 2
    while (1 << k) - 1 < n:
        k += 1
    dim = (1 << k) - 1
    current = hamming_perfect_code(k)
    while dim > n:
        current = project_packing_to_layer(prism(hypercube(dim - 1)), current)
        dim -= 1
    return current


def hypercube_packing_construction(n: int, kind: SetKind) -> frozenset[int]:
    """Hamming code projections (2-packings) and their doubles (open packings) in Q_n."""
    if not 2 <= n <= MAX_CONSTRUCTION_DIM:
        raise ConstructionError(f"dimension must be in [2, {MAX_CONSTRUCTION_DIM}], got {n}")
    if kind is SetKind.TWO_PACKING:
        return _projected_code(n)
    if kind is SetKind.OPEN_PACKING:
        base = hypercube(n - 1)
        return double_packing(base, _projected_code(n - 1))
    raise ConstructionError(f"unsupported kind {kind.value}")


# ---------------------------------------------------------------- the set T in Q_8

Q8_SEVENTEEN = (
    "00000000", "00001110", "00110010", "00111100", "01010110", "01011000",
    "01100100", "01101001", "01111111", "10010100", "10100101", "10101011",
    "11000111", "11001100", "11011011", "11100010", "11110001",
)


def q8_seventeen_set() -> frozenset[int]:
    """A 2-packing of Q_8 with 17 vertices."""
    labels = HypercubeLabeling(8)
    return _self_check(hypercube(8), (labels.parse(s) for s in Q8_SEVENTEEN), SetKind.TWO_PACKING)


def doubled_q8_set() -> frozenset[int]:
    """The 34-element open packing of Q_9 obtained by doubling the Q_8 set."""
    return double_packing(hypercube(8), q8_seventeen_set(), prism(hypercube(8)))


# ---------------------------------------------------------------- G_k


def chained_c5_open_packing(k: int) -> frozenset[int]:
    """Open packing of size 5k in G_k □ K_2, one fixed pattern per pair of cycles.

    Per pair of cycles starting at base vertex 10p: position 3 in layer 1,
    positions 0 and 1 in layer 2, and both copies of position 2 of the
    second cycle.
    """
    if k < 1:
        raise GraphError("chained_c5 needs k >= 1")
    pg = prism(chained_c5(k))
    out = set()
    for p in range(k):
        base = 10 * p
        out |= {pg.vertex(base + 3, 0), pg.vertex(base + 0, 1), pg.vertex(base + 1, 1),
                pg.vertex(base + 7, 0), pg.vertex(base + 7, 1)}
    return _self_check(pg.graph, out, SetKind.OPEN_PACKING)


def double_dominating_set(graph: Graph, dominating, prism_graph: PrismGraph | None = None) -> frozenset[int]:
    """D x V(K_2) for a dominating set D of G; it totally dominates G □ K_2."""
    d = _require(graph, dominating, SetKind.DOMINATING, "input set")
    pg = prism_graph or prism(graph)
    out = {pg.vertex(v, layer) for v in d for layer in (0, 1)}
    return _self_check(pg.graph, out, SetKind.TOTAL_DOMINATING)
