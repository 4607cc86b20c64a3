"""Fixed small-graph corpora shared by the property tests."""

from __future__ import annotations

import random
from functools import lru_cache

from packlab.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    hypercube,
    path_graph,
    petersen_graph,
)

SEED = 20261016


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges, name=f"G({n},{p:.2f})")


def random_bipartite(rng: random.Random, a: int, b: int, p: float) -> Graph:
    edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < p]
    return Graph.from_edges(a + b, edges, name=f"B({a},{b},{p:.2f})")


def named_graphs() -> list[Graph]:
    out = [empty_graph(1), empty_graph(3), petersen_graph()]
    out += [complete_graph(n) for n in range(2, 7)]
    out += [path_graph(n) for n in range(2, 9)]
    out += [cycle_graph(n) for n in range(3, 11)]
    out += [hypercube(n) for n in range(1, 4)]
    out.append(Graph.from_edges(6, [(0, i) for i in range(1, 6)], name="star"))
    out.append(Graph.from_edges(5, [(u, v) for u in range(2) for v in range(2, 5)], name="K2,3"))
    return out


@lru_cache(maxsize=None)
def random_corpus(count: int = 500, max_n: int = 12) -> tuple[Graph, ...]:
    """A fixed, seeded list of random graphs with 1..max_n vertices."""
    rng = random.Random(SEED)
    return tuple(random_graph(rng, rng.randint(1, max_n), rng.uniform(0.1, 0.7)) for _ in range(count))


@lru_cache(maxsize=None)
def bipartite_corpus(count: int = 220, max_n: int = 14) -> tuple[Graph, ...]:
    rng = random.Random(SEED + 1)
    out = []
    for _ in range(count):
        a = rng.randint(1, max_n - 1)
        b = rng.randint(1, max_n - a)
        out.append(random_bipartite(rng, a, b, rng.uniform(0.15, 0.6)))
    return tuple(out)


def oracle_corpus() -> list[Graph]:
    return named_graphs() + list(random_corpus(200))
