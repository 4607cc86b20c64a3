"""Injective colourings: partitions of the vertex set into open packings.

A graph is perfect injectively colourable when some injective colouring
uses only maximum open packings as classes.  For hypercubes up to Q_8 the
witnesses are found by search or assembled from Hamming-code cosets and
prism lifting; Q_9 fails by divisibility.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .constructions import double_packing, doubled_q8_set, hamming_coset_partition, hamming_perfect_code
from .graph import Graph, GraphError, Neighborhood, PrismGraph, conflict_graph, hypercube, prism
from .solvers import Budget, BudgetExceeded, InvariantKind, Meter, compute_invariant, regular_sphere_bounds
from .verify import Partition, SetKind, verify_injective_coloring, verify_partition_classes
from . import constants


def partition_error(graph: Graph, partition: Partition) -> str | None:
    return partition.structure_error(graph.vertex_count)


def find_partition_into_packings(graph: Graph, kind: SetKind, class_size: int,
                                 budget: Budget | None = None) -> Partition | None:
    """Exact cover of V(G) by packings of exactly ``class_size`` vertices.

    The class through the lowest uncovered vertex is chosen first and its
    members are enumerated in increasing order, so the first partition found
    is reproducible.  Returns None when no partition exists and raises
    :class:`~packlab.solvers.BudgetExceeded` when the budget runs out.
    """
    n = graph.vertex_count
    if kind not in (SetKind.TWO_PACKING, SetKind.OPEN_PACKING):
        raise ValueError(f"classes must be two-packings or open packings, not {kind.value}")
    if class_size < 1 or n % class_size:
        raise GraphError(f"class size {class_size} does not divide {n}")
    nb = Neighborhood.CLOSED if kind is SetKind.TWO_PACKING else Neighborhood.OPEN
    conflicts = conflict_graph(graph, nb).masks
    meter = Meter(budget)
    classes: list[list[int]] = []

    def packings(chosen: list[int], cand: int, need: int):
        if need == 0:
            yield chosen
            return
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            chosen.append(w)
            yield from packings(chosen, cand & ~conflicts[w], need - 1)
            chosen.pop()

    def cover(uncovered: int) -> bool:
        meter.tick()
        if not uncovered:
            return True
        low = uncovered & -uncovered
        v = low.bit_length() - 1
        for members in packings([v], uncovered & ~conflicts[v] & ~low, class_size - 1):
            mask = 0
            for w in members:
                mask |= 1 << w
            classes.append(list(members))
            if cover(uncovered & ~mask):
                return True
            classes.pop()
            meter.tick()
        return False

    if not cover((1 << n) - 1):
        return None
    partition = Partition.of(classes)
    if partition_error(graph, partition) or not verify_partition_classes(graph, partition, kind):
        raise AssertionError("partition search produced an invalid partition")
    return partition


def lift_partition_to_prism(graph: Graph, partition: Partition,
                            prism_graph: PrismGraph | None = None) -> Partition:
    """Map every 2-packing class C to C x V(K_2), giving an injective colouring of the prism."""
    problem = partition_error(graph, partition)
    if problem:
        raise GraphError(f"not a partition: {problem}")
    verdict = verify_partition_classes(graph, partition, SetKind.TWO_PACKING)
    if not verdict:
        raise GraphError(f"class is not a 2-packing: {verdict.message}")
    pg = prism_graph or prism(graph)
    lifted = Partition.of(sorted(pg.vertex(v, layer) for v in cls_ for layer in (0, 1)) for cls_ in partition)
    if not verify_injective_coloring(pg.graph, lifted):
        raise AssertionError("lifted partition is not an injective colouring")
    return lifted


def power_of_two_obstruction(vertex_count: int, rho_o_lower: int, rho_o_upper: int) -> bool:
    """True when no divisor of ``vertex_count`` lies in ``[lower, upper]``.

    Then no partition into maximum open packings can exist, whatever the
    exact open packing number is.
    """
    if rho_o_lower > rho_o_upper:
        raise ValueError(f"lower bound {rho_o_lower} exceeds upper bound {rho_o_upper}")
    if vertex_count < 1 or vertex_count & (vertex_count - 1):
        raise ValueError(f"{vertex_count} is not a power of two")
    return not any(vertex_count % d == 0 for d in range(max(rho_o_lower, 1), rho_o_upper + 1))


# ---------------------------------------------------------------- hypercubes


def q6_two_packing_partition(budget: Budget | None = None) -> Partition:
    """Q_6 split into 8 maximum 2-packings (size 8), found by exact-cover search."""
    found = find_partition_into_packings(hypercube(6), SetKind.TWO_PACKING, 8, budget)
    if found is None:
        raise AssertionError("Q_6 admits a partition into maximum 2-packings")
    return found


def q6_partition_from_cosets() -> Partition:
    """The same kind of partition read off the Hamming cosets of Q_7 restricted to a Q_6 layer."""
    q7 = hamming_coset_partition(3)
    classes = [sorted(v for v in cls_ if v < 64) for cls_ in q7]
    partition = Partition.of(classes)
    if not verify_partition_classes(hypercube(6), partition, SetKind.TWO_PACKING):
        raise AssertionError("restricted cosets are not 2-packings")
    return partition


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class PerfectInjectiveStatus:
    dimension: int
    verdict: Verdict
    witness: Partition | None = None
    obstruction: dict | None = None
    method: str = ""
    notes: list[str] = field(default_factory=list)


def _open_packing_number(n: int, budget: Budget | None) -> int | None:
    """rho_o(Q_n) from the solver (n <= 6) or from matching certified bounds."""
    if n <= 6:
        result = compute_invariant(hypercube(n), InvariantKind.OPEN_PACKING, budget)
        return result.value if result.exact else None
    if n == 7:
        # rho_o(Q_7) = 2 rho_2(Q_6) since Q_6 is bipartite
        result = compute_invariant(hypercube(6), InvariantKind.TWO_PACKING, budget)
        return 2 * result.value if result.exact else None
    if n == 8:
        doubled = double_packing(hypercube(7), hamming_perfect_code(3), prism(hypercube(7)))
        return len(doubled) if len(doubled) == regular_sphere_bounds(hypercube(8))[1] else None
    return None


def perfect_injective_status(n: int, budget: Budget | None = None) -> PerfectInjectiveStatus:
    """Decide whether Q_n (1 <= n <= 9) has an injective colouring by maximum open packings."""
    if not 1 <= n <= 9:
        raise GraphError(f"dimension must be in [1, 9], got {n}")
    q = hypercube(n)
    if n == 9:
        lower_set = doubled_q8_set()
        lower = len(lower_set)
        upper = constants.RHO_O_Q9_UPPER
        if not power_of_two_obstruction(q.vertex_count, lower, upper):
            raise AssertionError("expected the divisibility obstruction to apply")
        return PerfectInjectiveStatus(
            n, Verdict.NO, obstruction={"rule": "power-of-two", "vertex_count": q.vertex_count,
                                        "rho_o_lower": lower, "rho_o_upper": upper},
            method="no divisor of 512 lies in [34, 60]",
            notes=["lower bound certified by the doubled Q8 set", "upper bound is a recorded constant"])
    rho_o = _open_packing_number(n, budget)
    if rho_o is None:
        return PerfectInjectiveStatus(n, Verdict.UNKNOWN, method="open packing number not determined")
    try:
        if n <= 5:
            witness = find_partition_into_packings(q, SetKind.OPEN_PACKING, rho_o, budget)
            method = "direct exact-cover search"
        elif n == 6:
            base = find_partition_into_packings(hypercube(5), SetKind.TWO_PACKING, 4, budget)
            witness = None if base is None else lift_partition_to_prism(hypercube(5), base, prism(hypercube(5)))
            method = "lifted from a partition of Q5 into maximum 2-packings"
        elif n == 7:
            witness = lift_partition_to_prism(hypercube(6), q6_two_packing_partition(budget), prism(hypercube(6)))
            method = "lifted from a partition of Q6 into maximum 2-packings"
        else:
            witness = lift_partition_to_prism(hypercube(7), hamming_coset_partition(3), prism(hypercube(7)))
            method = "lifted from the Hamming cosets of Q7"
    except BudgetExceeded:
        return PerfectInjectiveStatus(n, Verdict.UNKNOWN, method="budget exhausted")
    if witness is None:
        return PerfectInjectiveStatus(n, Verdict.NO, method="exhaustive search found no partition")
    if not verify_injective_coloring(q, witness) or set(witness.sizes()) != {rho_o}:
        raise AssertionError(f"invalid perfect injective colouring witness for Q{n}")
    return PerfectInjectiveStatus(n, Verdict.YES, witness=witness, method=method)
