import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from corpus import random_corpus, random_graph
from packlab.graph import (
    Graph,
    GraphError,
    Neighborhood,
    chained_c5,
    conflict_graph,
    cycle_graph,
    empty_graph,
    hypercube,
    path_graph,
    petersen_graph,
)
from packlab.solvers import (
    Budget,
    InvariantKind,
    InvariantResult,
    Status,
    brute_force_oracle,
    compute_invariant,
    max_independent_set,
    regular_sphere_bounds,
)
from packlab.verify import Partition, SetKind, verify_injective_coloring, verify_set

K = InvariantKind


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


def nx_independence_number(g: Graph) -> int:
    return max(len(c) for c in nx.find_cliques(nx.complement(to_nx(g))))


def test_petersen_independence_number():
    # independent check by enumerating all 5-subsets
    g = petersen_graph()
    five = [s for s in itertools.combinations(range(10), 5) if not any(g.has_edge(u, v) for u, v in itertools.combinations(s, 2))]
    assert five == []
    result = max_independent_set(g)
    assert result.exact and result.value == 4


@pytest.mark.parametrize("graph, kind, value", [
    (cycle_graph(4), K.OPEN_PACKING, 2),
    (cycle_graph(5), K.TWO_PACKING, 1),
    (path_graph(4), K.TOTAL_DOMINATION, 2),
    (hypercube(3), K.INJECTIVE_CHROMATIC, 4),
    (hypercube(2), K.TWO_PACKING, 1),
    (chained_c5(1), K.TWO_PACKING, 2),
])
def test_small_values_agree_with_oracle(graph, kind, value):
    assert brute_force_oracle(graph, kind) == value
    result = compute_invariant(graph, kind)
    assert result.exact and result.value == value


@pytest.mark.parametrize("g", list(random_corpus(120, 11)), ids=lambda g: g.name)
def test_mis_agrees_with_networkx(g):
    assert max_independent_set(g).value == nx_independence_number(g)


def test_certificates_verify():
    for g in list(random_corpus(60, 10)):
        for kind in K:
            if kind is K.TOTAL_DOMINATION and g.isolated_vertices():
                continue
            r = compute_invariant(g, kind)
            if kind is K.INJECTIVE_CHROMATIC:
                assert verify_injective_coloring(g, r.certificate)
                assert len(r.certificate) == r.value
            else:
                assert verify_set(g, r.certificate, kind.set_kind)
                assert len(r.certificate) == r.value


def test_total_domination_rejects_isolated_vertices():
    with pytest.raises(GraphError):
        compute_invariant(empty_graph(2), K.TOTAL_DOMINATION)
    with pytest.raises(GraphError):
        brute_force_oracle(empty_graph(2), K.TOTAL_DOMINATION)


def test_empty_graph_has_zero_invariants():
    for kind in (K.TWO_PACKING, K.DOMINATION, K.INJECTIVE_CHROMATIC):
        assert compute_invariant(Graph(()), kind).value == 0


def test_invariant_result_validation():
    with pytest.raises(ValueError):
        InvariantResult(K.DOMINATION, 3, 2, Status.TIMEOUT)
    with pytest.raises(ValueError):
        InvariantResult(K.DOMINATION, 2, 3, Status.EXACT, frozenset({0, 1}))
    with pytest.raises(ValueError):
        InvariantResult(K.DOMINATION, 2, 2, Status.EXACT)
    with pytest.raises(ValueError):
        InvariantResult(K.DOMINATION, 1, 2, Status.TIMEOUT).value


@pytest.mark.parametrize("kind", list(K))
@pytest.mark.parametrize("nodes", [1, 5, 40])
def test_node_limit_brackets_exact_value(kind, nodes):
    g = hypercube(5)
    exact = compute_invariant(g, kind).value
    limited = compute_invariant(g, kind, Budget(nodes=nodes))
    assert limited.lower <= exact <= limited.upper
    if not limited.exact:
        assert limited.status is Status.TIMEOUT


def test_bounds_tighten_with_budget():
    g = hypercube(6)
    runs = [compute_invariant(g, K.DOMINATION, Budget(nodes=n)) for n in (10, 100, 1000)]
    # every run brackets the recorded value 12
    assert all(r.lower <= 12 <= r.upper for r in runs)


def test_packings_never_exceed_dominations():
    for g in random_corpus(150, 10):
        assert compute_invariant(g, K.TWO_PACKING).value <= compute_invariant(g, K.DOMINATION).value
        if not g.isolated_vertices():
            assert compute_invariant(g, K.OPEN_PACKING).value <= compute_invariant(g, K.TOTAL_DOMINATION).value


def test_perfect_code_pins_both_invariants():
    seen = 0
    for g in random_corpus(150, 9):
        n = g.vertex_count
        for size in range(1, n + 1):
            codes = [s for s in itertools.combinations(range(n), size) if verify_set(g, s, SetKind.PERFECT_CODE)]
            if codes:
                seen += 1
                assert compute_invariant(g, K.DOMINATION).value == size
                assert compute_invariant(g, K.TWO_PACKING).value == size
                break
    assert seen > 10


def test_injective_chromatic_is_chromatic_number_of_open_conflict_graph():
    for g in random_corpus(60, 9):
        conflicts = conflict_graph(g, Neighborhood.OPEN)
        coloring = nx.coloring.greedy_color(to_nx(conflicts))
        groups: dict[int, set[int]] = {}
        for v, c in coloring.items():
            groups.setdefault(c, set()).add(v)
        assert verify_injective_coloring(g, Partition.of(groups.values()))
        chi = compute_invariant(g, K.INJECTIVE_CHROMATIC).value
        assert chi <= len(groups)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.floats(0.1, 0.8), st.integers(0, 10**6))
def test_random_graphs_match_oracle(n, p, seed):
    g = random_graph(random.Random(seed), n, p)
    for kind in K:
        if kind is K.TOTAL_DOMINATION and g.isolated_vertices():
            continue
        assert compute_invariant(g, kind).value == brute_force_oracle(g, kind)


@pytest.mark.parametrize("n, bounds", [(7, (16, 18)), (8, (28, 32)), (9, (51, 56))])
def test_sphere_bounds(n, bounds):
    assert regular_sphere_bounds(hypercube(n)) == bounds


def test_sphere_bounds_need_regular_graph():
    with pytest.raises(GraphError):
        regular_sphere_bounds(path_graph(3))
    with pytest.raises(GraphError):
        regular_sphere_bounds(empty_graph(3))
