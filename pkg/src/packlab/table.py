"""Reproduction of the hypercube invariant table and the direct-product formula.

Every cell is labelled by where its numbers come from: the exact solver or a
construction meeting a proven bound (Computed), a verified construction
giving one side only (Constructed), or a recorded value (PaperConstant).
Computed numbers are always checked against the recorded ones.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import constants
from .constructions import (
    double_dominating_set,
    double_packing,
    doubled_q8_set,
    hamming_perfect_code,
    hypercube_packing_construction,
    q8_seventeen_set,
    projected_code_size,
)
from .graph import Graph, GraphError, direct_product, hypercube, prism
from .report import Provenance, ResultEntry
from .solvers import Budget, InvariantKind, InvariantResult, compute_invariant, regular_sphere_bounds
from .verify import SetKind

INVARIANTS = ("gamma", "gamma-t", "rho2", "rho-o")
COMPUTED = Provenance.COMPUTED.value
CONSTRUCTED = Provenance.CONSTRUCTED.value
PAPER = Provenance.PAPER_CONSTANT.value
SOLVER_MAX_N = 6


@dataclass
class Table1:
    max_n: int
    cells: list[ResultEntry] = field(default_factory=list)
    contradictions: list[str] = field(default_factory=list)

    def cell(self, invariant: str, n: int) -> ResultEntry:
        for c in self.cells:
            if c.invariant == invariant and c.n == n:
                return c
        raise KeyError((invariant, n))

    def grid(self) -> str:
        width = 7
        head = "n".ljust(9) + "".join(str(n).rjust(width) for n in range(1, self.max_n + 1))
        rows = [head]
        for inv in INVARIANTS:
            row = inv.ljust(9)
            for n in range(1, self.max_n + 1):
                c = self.cell(inv, n)
                mark = {"Computed": "", "Constructed": "*", "PaperConstant": "†"}[c.provenance]
                row += (c.display_value() + mark).rjust(width)
            rows.append(row)
        rows.append("* bound certified by a construction   † recorded value")
        return "\n".join(rows)


class _Cells:
    """Builds cells, sharing solver runs between them."""

    def __init__(self, timeout_ms: int | None):
        self.budget = Budget(time_ms=timeout_ms)
        self.cache: dict[tuple[str, int], InvariantResult] = {}
        self.brackets: dict[tuple[str, int], tuple[int, int | None]] = {}

    def solve(self, invariant: str, n: int) -> InvariantResult:
        key = (invariant, n)
        if key not in self.cache:
            self.cache[key] = compute_invariant(hypercube(n), InvariantKind(invariant), self.budget)
        return self.cache[key]

    def build(self, invariant: str, n: int) -> ResultEntry:
        start = time.monotonic()
        if n <= SOLVER_MAX_N:
            entry = self._solver_cell(invariant, n)
        else:
            entry = getattr(self, "_" + invariant.replace("-", "_"))(n)
        entry.n = n
        entry.elapsed_ms = max(entry.elapsed_ms, int((time.monotonic() - start) * 1000))
        return entry

    def _solver_cell(self, invariant: str, n: int) -> ResultEntry:
        result = self.solve(invariant, n)
        entry = ResultEntry.from_result(result)
        if result.exact:
            return entry
        # fall back to the analytic bounds where they are sharper
        q = hypercube(n)
        size = q.vertex_count
        if invariant == "rho2":
            entry.upper = min(entry.upper, regular_sphere_bounds(q)[0])
            if n >= 2:
                entry.lower = max(entry.lower, projected_code_size(n))
        elif invariant == "rho-o":
            entry.upper = min(entry.upper, regular_sphere_bounds(q)[1])
        elif invariant == "gamma":
            entry.lower = max(entry.lower, -(-size // (n + 1)))
        elif invariant == "gamma-t":
            entry.lower = max(entry.lower, -(-size // n))
        entry.note = "budget exhausted; bounds only"
        return entry

    # --- n >= 7

    def _rho2(self, n: int) -> ResultEntry:
        q = hypercube(n)
        sphere = regular_sphere_bounds(q)[0]
        if n == 7:
            code = hamming_perfect_code(3)
            if len(code) != sphere:
                raise AssertionError("Hamming code of Q7 must meet the sphere bound")
            return ResultEntry("rho2", len(code), sphere, "exact", COMPUTED,
                               note="Hamming code meets the sphere bound 128/8")
        if n == 8:
            t = q8_seventeen_set()
            return ResultEntry("rho2", len(t), constants.RHO_2_Q8_UPPER, "bounds-only", PAPER,
                               citation=f"{constants.TABLE_CITATION}; upper: {constants.RHO_2_Q8_UPPER_CITATION}",
                               lower_provenance=CONSTRUCTED, upper_provenance=PAPER,
                               note=f"lower certified by the 17-set T; sphere bound gives <= {sphere}")
        construction = hypercube_packing_construction(n, SetKind.TWO_PACKING)
        return ResultEntry("rho2", len(construction), sphere, "bounds-only", CONSTRUCTED,
                           lower_provenance=CONSTRUCTED, upper_provenance=COMPUTED,
                           note="lower: projected Hamming code; upper: sphere bound; exact value unknown")

    def _rho_o(self, n: int) -> ResultEntry:
        q = hypercube(n)
        sphere = regular_sphere_bounds(q)[1]
        if n == 7:
            base = self.solve("rho2", 6)
            if not base.exact:
                return ResultEntry("rho-o", 2 * base.lower, 2 * base.upper, "timeout", COMPUTED,
                                   note="rho_o(Q7) = 2 rho_2(Q6); rho_2(Q6) not resolved in budget")
            doubled = double_packing(hypercube(6), base.certificate, prism(hypercube(6)))
            return ResultEntry("rho-o", len(doubled), 2 * base.value, "exact", COMPUTED,
                               note="doubled rho_2(Q6)-set; equality for prisms over bipartite graphs")
        if n == 8:
            doubled = double_packing(hypercube(7), hamming_perfect_code(3), prism(hypercube(7)))
            if len(doubled) != sphere:
                raise AssertionError("doubled Hamming code must meet the open sphere bound")
            return ResultEntry("rho-o", len(doubled), sphere, "exact", COMPUTED,
                               note="doubled Hamming code meets the sphere bound 256/8")
        doubled = doubled_q8_set()
        return ResultEntry("rho-o", len(doubled), constants.RHO_O_Q9_UPPER, "bounds-only", PAPER,
                           citation=f"{constants.TABLE_CITATION}; upper: {constants.RHO_O_Q9_UPPER_CITATION}",
                           lower_provenance=CONSTRUCTED, upper_provenance=PAPER,
                           note=f"lower certified by doubling T; sphere bound gives <= {sphere}")

    def _dominating_q8(self) -> frozenset[int]:
        return double_dominating_set(hypercube(7), hamming_perfect_code(3), prism(hypercube(7)))

    def _gamma(self, n: int) -> ResultEntry:
        q = hypercube(n)
        lower = -(-q.vertex_count // (n + 1))
        if n == 7:
            code = hamming_perfect_code(3)
            if len(code) != lower:
                raise AssertionError("a perfect code attains the domination lower bound")
            return ResultEntry("gamma", len(code), len(code), "exact", COMPUTED,
                               note="1-perfect code: gamma = rho_2 = 128/8")
        if n == 8:
            upper = len(self._dominating_q8())
        else:
            upper = len(double_dominating_set(hypercube(8), self._dominating_q8(), prism(hypercube(8))))
        return self._recorded("gamma", n, lower, upper)

    def _gamma_t(self, n: int) -> ResultEntry:
        q = hypercube(n)
        lower = -(-q.vertex_count // n)
        if n == 7:
            base = self.solve("gamma", 6)
            upper = None
            if base.exact:
                upper = len(double_dominating_set(hypercube(6), base.certificate, prism(hypercube(6))))
            return self._recorded("gamma-t", n, lower, upper)
        if n == 8:
            tds = self._dominating_q8()
            packing = double_packing(hypercube(7), hamming_perfect_code(3), prism(hypercube(7)))
            if len(tds) != len(packing):
                raise AssertionError("open packing and total dominating set of Q8 must match")
            return ResultEntry("gamma-t", len(packing), len(tds), "exact", COMPUTED,
                               note="open packing of 32 (lower) and doubled Hamming code (upper)")
        upper = len(double_dominating_set(hypercube(8), self._dominating_q8(), prism(hypercube(8))))
        return self._recorded("gamma-t", n, lower, upper)

    def _recorded(self, invariant: str, n: int, lower: int, upper: int | None) -> ResultEntry:
        value = constants.TABLE[invariant][n]
        bracket = f"[{lower}, {upper if upper is not None else '?'}]"
        entry = ResultEntry(invariant, value, value, "bounds-only", PAPER,
                            citation=f"{constants.TABLE_CITATION}; {constants.CITED_DOMINATION}",
                            lower_provenance=PAPER, upper_provenance=PAPER,
                            note=f"computed bracket {bracket}")
        self.brackets[(invariant, n)] = (lower, upper)
        return entry


def _check(entry: ResultEntry, bracket: tuple[int, int | None] | None) -> str | None:
    """Describe a contradiction between computed bounds and the recorded value."""
    recorded = constants.interval(entry.invariant, entry.n)
    if bracket is not None:
        lo, hi = bracket
        value = recorded[0]
        if value < lo or (hi is not None and value > hi):
            return f"{entry.invariant}(Q{entry.n}): recorded {value} outside computed bracket [{lo}, {hi}]"
        return None
    if recorded is None:
        return None
    lo, hi = recorded
    computed_lo = entry.lower if entry.lower_provenance in (None, COMPUTED, CONSTRUCTED) else None
    computed_hi = entry.upper if entry.upper_provenance in (None, COMPUTED, CONSTRUCTED) else None
    if computed_lo is not None and computed_lo > hi:
        return f"{entry.invariant}(Q{entry.n}): computed lower bound {computed_lo} exceeds recorded {hi}"
    if computed_hi is not None and computed_hi < lo:
        return f"{entry.invariant}(Q{entry.n}): computed upper bound {computed_hi} is below recorded {lo}"
    if entry.status == "exact" and lo == hi and entry.lower != lo:
        return f"{entry.invariant}(Q{entry.n}): computed {entry.lower}, recorded {lo}"
    return None


def _solve_cell(args: tuple[str, int, int | None]) -> tuple[tuple[str, int], InvariantResult]:
    invariant, n, timeout_ms = args
    return (invariant, n), compute_invariant(hypercube(n), InvariantKind(invariant), Budget(time_ms=timeout_ms))


def table1(max_n: int = 9, timeout_ms: int | None = 60_000, workers: int = 1) -> Table1:
    """Rebuild the invariant table for Q_1..Q_max_n.

    With ``workers > 1`` the solver cells run in a process pool first; the
    results do not depend on the worker count.
    """
    if not 1 <= max_n <= 9:
        raise GraphError(f"max n must be in [1, 9], got {max_n}")
    builder = _Cells(timeout_ms)
    if workers > 1:
        jobs = [(inv, n, timeout_ms) for inv in INVARIANTS for n in range(1, min(max_n, SOLVER_MAX_N) + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            builder.cache.update(pool.map(_solve_cell, jobs))
    table = Table1(max_n)
    for invariant in INVARIANTS:
        for n in range(1, max_n + 1):
            entry = builder.build(invariant, n)
            problem = _check(entry, builder.brackets.get((invariant, n)))
            if problem:
                table.contradictions.append(problem)
            table.cells.append(entry)
    return table


# ---------------------------------------------------------------- direct products


@dataclass
class DirectProductCheck:
    k: int
    factor: Graph
    product: InvariantResult
    factor_result: InvariantResult
    multiplier: int

    @property
    def conclusive(self) -> bool:
        return self.product.exact and self.factor_result.exact

    @property
    def holds(self) -> bool:
        return self.conclusive and self.product.value == self.multiplier * self.factor_result.value


def direct_product_check(k: int, factor: Graph, timeout_ms: int | None = 60_000) -> DirectProductCheck:
    """Compare gamma_t(Q_{2^k} x H) with 2^(2^k - k) gamma_t(H), both solved exactly."""
    if k < 1:
        raise GraphError("k must be at least 1")
    if factor.isolated_vertices():
        raise GraphError("the factor must not have isolated vertices")
    budget = Budget(time_ms=timeout_ms)
    dim = 2 ** k
    product = direct_product(hypercube(dim), factor).graph
    lhs = compute_invariant(product, InvariantKind.TOTAL_DOMINATION, budget)
    rhs = compute_invariant(factor, InvariantKind.TOTAL_DOMINATION, budget)
    return DirectProductCheck(k, factor, lhs, rhs, 2 ** (dim - k))
