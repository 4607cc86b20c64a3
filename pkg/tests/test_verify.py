import pytest

from packlab.graph import GraphError, cycle_graph, empty_graph, hypercube, path_graph
from packlab.verify import Partition, SetKind, verify_injective_coloring, verify_partition_classes, verify_set


def test_open_packing_failure_names_common_neighbor():
    verdict = verify_set(cycle_graph(4), {0, 2}, SetKind.OPEN_PACKING)
    assert not verdict
    assert verdict.witness == (0, 2, 1)
    assert "common neighbor 1" in verdict.message


def test_adjacent_pair_is_not_a_two_packing():
    verdict = verify_set(path_graph(3), {0, 1}, SetKind.TWO_PACKING)
    assert not verdict
    assert "adjacent" in verdict.message


def test_adjacent_pair_can_be_an_open_packing():
    assert verify_set(path_graph(2), {0, 1}, SetKind.OPEN_PACKING)


def test_q3_antipodal_pair_is_a_perfect_code():
    q = hypercube(3)
    assert verify_set(q, {0b000, 0b111}, SetKind.PERFECT_CODE)
    assert verify_set(q, {0b000, 0b111}, SetKind.DOMINATING)
    assert not verify_set(q, {0b000, 0b011}, SetKind.PERFECT_CODE)


def test_domination_failure_reports_undominated_vertex():
    verdict = verify_set(path_graph(5), {0}, SetKind.DOMINATING)
    assert not verdict
    assert 2 in verdict.witness


def test_total_domination_needs_neighbors_inside():
    assert not verify_set(path_graph(3), {1}, SetKind.TOTAL_DOMINATING)
    assert verify_set(path_graph(3), {0, 1}, SetKind.TOTAL_DOMINATING)
    with pytest.raises(GraphError):
        verify_set(empty_graph(2), {0}, SetKind.TOTAL_DOMINATING)


def test_out_of_range_member_rejected():
    with pytest.raises(GraphError):
        verify_set(path_graph(3), {5}, SetKind.TWO_PACKING)


def test_injective_coloring_examples():
    q = hypercube(3)
    antipodal = Partition.of([{v, v ^ 0b111} for v in range(4)])
    assert verify_injective_coloring(q, antipodal)
    assert not verify_injective_coloring(cycle_graph(4), Partition.of([{0, 2}, {1, 3}]))
    assert verify_injective_coloring(cycle_graph(4), Partition.of([{0, 1}, {2, 3}]))


@pytest.mark.parametrize("classes", [
    [{0, 1}, {1, 2, 3}],
    [{0, 1}, {2}],
    [{0, 1}, set(), {2, 3}],
])
def test_injective_coloring_structure_errors(classes):
    with pytest.raises(GraphError):
        verify_injective_coloring(cycle_graph(4), Partition(tuple(frozenset(c) for c in classes)))


def test_partition_classes_of_a_kind():
    q = hypercube(3)
    assert verify_partition_classes(q, Partition.of([{0, 7}, {1, 6}, {2, 5}, {3, 4}]), SetKind.TWO_PACKING)
    assert not verify_partition_classes(q, Partition.of([{0, 1}, {2, 3}, {4, 5}, {6, 7}]), SetKind.TWO_PACKING)
