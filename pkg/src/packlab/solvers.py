"""Exact solvers for the packing, domination and injective colouring numbers.

Packings are maximum independent sets of a conflict graph, the injective
chromatic number is the chromatic number of the open conflict graph, and
(total) domination is a minimum set cover by (open) closed neighborhoods.
Every search is deterministic for a fixed input and node budget.
"""

from __future__ import annotations

import enum
import math
import sys
import time
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, GraphError, Neighborhood, conflict_graph, from_mask, to_mask
from .verify import Partition, SetKind, verify_injective_coloring, verify_set


class InvariantKind(enum.Enum):
    TWO_PACKING = "rho2"
    OPEN_PACKING = "rho-o"
    DOMINATION = "gamma"
    TOTAL_DOMINATION = "gamma-t"
    INJECTIVE_CHROMATIC = "chi-i"

    @property
    def maximize(self) -> bool:
        return self in (InvariantKind.TWO_PACKING, InvariantKind.OPEN_PACKING)

    @property
    def set_kind(self) -> SetKind | None:
        return _CERT_KIND.get(self)


_CERT_KIND = {
    InvariantKind.TWO_PACKING: SetKind.TWO_PACKING,
    InvariantKind.OPEN_PACKING: SetKind.OPEN_PACKING,
    InvariantKind.DOMINATION: SetKind.DOMINATING,
    InvariantKind.TOTAL_DOMINATION: SetKind.TOTAL_DOMINATING,
}


class Status(enum.Enum):
    EXACT = "exact"
    BOUNDS_ONLY = "bounds-only"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Budget:
    """Optional wall-clock (ms) and search-node limits."""

    time_ms: int | None = None
    nodes: int | None = None


UNLIMITED = Budget()


@dataclass
class InvariantResult:
    kind: InvariantKind | None
    lower: int
    upper: int
    status: Status
    certificate: frozenset[int] | Partition | None = None
    elapsed_ms: int = 0
    nodes: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.status is Status.EXACT and (self.lower != self.upper or self.certificate is None):
            raise ValueError("an exact result needs equal bounds and a certificate")

    @property
    def exact(self) -> bool:
        return self.status is Status.EXACT

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"no exact value: bounds [{self.lower}, {self.upper}]")
        return self.lower


class BudgetExceeded(Exception):
    """Search stopped because the node or time limit was reached."""


class Meter:
    """Counts search nodes and enforces a Budget."""

    _CLOCK_EVERY = 256

    def __init__(self, budget: Budget | None = None):
        budget = budget or UNLIMITED
        self.node_limit = budget.nodes
        self.start = time.monotonic()
        self.deadline = None if budget.time_ms is None else self.start + budget.time_ms / 1000
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExceeded
        if self.deadline is not None and self.nodes % self._CLOCK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded

    def elapsed_ms(self) -> int:
        return int((time.monotonic() - self.start) * 1000)


def _deep_recursion(n: int) -> None:
    need = 4 * n + 1000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


# ------------------------------------------------------------ independent set


def _clique_cover_size(cand: int, adj: tuple[int, ...]) -> int:
    """Greedy clique partition of ``cand``; its size bounds any independent set."""
    count = 0
    while cand:
        low = cand & -cand
        cand ^= low
        grow = adj[low.bit_length() - 1] & cand
        while grow:
            u = grow & -grow
            cand ^= u
            grow &= adj[u.bit_length() - 1]
        count += 1
    return count


def _greedy_independent(cand: int, adj: tuple[int, ...]) -> list[int]:
    chosen = []
    while cand:
        best, best_deg = -1, None
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            d = (adj[v] & cand).bit_count()
            if best_deg is None or d < best_deg:
                best, best_deg = v, d
            c ^= low
        chosen.append(best)
        cand &= ~(adj[best] | (1 << best))
    return chosen


class _MIS:
    def __init__(self, adj: tuple[int, ...], meter: Meter):
        self.adj = adj
        self.meter = meter
        self.best: list[int] = []

    def solve(self, cand: int) -> None:
        self.best = _greedy_independent(cand, self.adj)
        self._expand(cand, [])

    def _expand(self, cand: int, current: list[int]) -> None:
        self.meter.tick()
        adj = self.adj
        if not cand:
            if len(current) > len(self.best):
                self.best = list(current)
            return
        if len(current) + _clique_cover_size(cand, adj) <= len(self.best):
            return
        pick, pick_deg = -1, -1
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            d = (adj[v] & cand).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
            c ^= low
        if pick_deg == 0:
            total = current + from_mask(cand)
            if len(total) > len(self.best):
                self.best = total
            return
        current.append(pick)
        self._expand(cand & ~(adj[pick] | (1 << pick)), current)
        current.pop()
        self._expand(cand & ~(1 << pick), current)


def _components_of(n: int, adj: tuple[int, ...]) -> list[int]:
    comps = []
    left = (1 << n) - 1
    while left:
        frontier = left & -left
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
        comps.append(comp)
        left &= ~comp
    return comps


def max_independent_set(graph: Graph, budget: Budget | None = None, *, kind: InvariantKind | None = None,
                        meter: Meter | None = None) -> InvariantResult:
    """Branch and bound maximum independent set.

    Branches on a vertex of maximum remaining degree (lowest index on ties),
    include-branch first, pruning with a greedy clique cover.  Connected
    components are solved separately and the results added.
    """
    meter = meter or Meter(budget)
    adj = graph.masks
    _deep_recursion(graph.vertex_count)
    comps = _components_of(graph.vertex_count, adj)
    found: list[int] = []
    upper = 0
    timed_out = False
    for comp in comps:
        search = _MIS(adj, meter)
        if timed_out:
            found += _greedy_independent(comp, adj)
            upper += _clique_cover_size(comp, adj)
            continue
        try:
            search.solve(comp)
            found += search.best
            upper += len(search.best)
        except BudgetExceeded:
            timed_out = True
            found += search.best
            upper += _clique_cover_size(comp, adj)
    cert = frozenset(found)
    status = Status.TIMEOUT if timed_out else Status.EXACT
    return InvariantResult(kind, len(cert), max(upper, len(cert)), status, cert, meter.elapsed_ms(), meter.nodes)


# ------------------------------------------------------------ set cover


class _Cover:
    """Minimum cover of ``universe`` by the sets ``cover[c]``."""

    def __init__(self, cover: tuple[int, ...], options: tuple[int, ...], meter: Meter):
        self.cover = cover
        self.options = options
        self.meter = meter
        self.best: list[int] | None = None

    def greedy(self, universe: int, candidates: int) -> list[int]:
        chosen = []
        left = universe
        while left:
            best, gain = -1, 0
            c = candidates
            while c:
                low = c & -c
                v = low.bit_length() - 1
                g = (self.cover[v] & left).bit_count()
                if g > gain:
                    best, gain = v, g
                c ^= low
            if best < 0:
                raise GraphError("universe cannot be covered")
            chosen.append(best)
            left &= ~self.cover[best]
        return chosen

    def lower_bound(self, universe: int, allowed: int) -> tuple[int, int, int] | None:
        """``(bound, branch element, its options)``; None if some element is uncoverable.

        Each chosen set covers at most ``1/m(x)`` worth of every element ``x``
        it touches when ``m(x)`` is the largest coverage among the options of
        ``x``, so the sum of ``1/m(x)`` bounds the number of sets needed.  The
        simple bound ``ceil(|U| / max coverage)`` is never stronger.
        """
        cover, options = self.cover, self.options
        gain = {}
        a = allowed
        while a:
            low = a & -a
            v = low.bit_length() - 1
            g = (cover[v] & universe).bit_count()
            if g:
                gain[v] = g
            a ^= low
        if not gain:
            return None
        frac = 0.0
        branch, branch_opts, fewest = -1, 0, None
        u = universe
        while u:
            low = u & -u
            x = low.bit_length() - 1
            opts = options[x] & allowed
            if not opts:
                return None
            k = opts.bit_count()
            if fewest is None or k < fewest:
                branch, branch_opts, fewest = x, opts, k
            m = 0
            o = opts
            while o:
                ol = o & -o
                g = gain[ol.bit_length() - 1]
                if g > m:
                    m = g
                o ^= ol
            frac += 1.0 / m
            u ^= low
        simple = -(-universe.bit_count() // max(gain.values()))
        return max(simple, math.ceil(frac - 1e-9)), branch, branch_opts

    def solve(self, universe: int, candidates: int) -> None:
        self.best = self.greedy(universe, candidates)
        self._expand(universe, candidates, [])

    def _expand(self, universe: int, allowed: int, chosen: list[int]) -> None:
        self.meter.tick()
        if not universe:
            if len(chosen) < len(self.best):
                self.best = list(chosen)
            return
        info = self.lower_bound(universe, allowed)
        if info is None:
            return
        bound, x, opts = info
        if len(chosen) + bound >= len(self.best):
            return
        ranked = sorted(from_mask(opts), key=lambda c: (-(self.cover[c] & universe).bit_count(), c))
        for c in ranked:
            chosen.append(c)
            self._expand(universe & ~self.cover[c], allowed, chosen)
            chosen.pop()
            # later branches may not reuse an option already explored here
            allowed &= ~(1 << c)


def min_cover(n: int, cover: tuple[int, ...], meter: Meter) -> tuple[list[int], int, int, bool]:
    """Minimum number of sets ``cover[c]`` covering ``0..n-1``.

    Returns ``(best cover, lower bound, upper bound, exact)``.  Independent
    parts of the instance (elements linked through shared sets) are solved
    separately.
    """
    options = [0] * n
    for c, m in enumerate(cover):
        for x in from_mask(m):
            options[x] |= 1 << c
    options = tuple(options)
    # link elements that share a covering set
    linked = [0] * n
    for m in cover:
        for x in from_mask(m):
            linked[x] |= m
    search = _Cover(cover, options, meter)
    found: list[int] = []
    lower = upper = 0
    timed_out = False
    for part in _components_of(n, tuple(linked)):
        cands = 0
        for x in from_mask(part):
            cands |= options[x]
        if timed_out:
            greedy = search.greedy(part, cands)
            found += greedy
            upper += len(greedy)
            lower += search.lower_bound(part, cands)[0]
            continue
        root = search.lower_bound(part, cands)
        if root is None:
            raise GraphError("universe cannot be covered")
        try:
            search.solve(part, cands)
            found += search.best
            lower += len(search.best)
            upper += len(search.best)
        except BudgetExceeded:
            timed_out = True
            found += search.best
            lower += root[0]
            upper += len(search.best)
    return found, lower, upper, not timed_out


# ------------------------------------------------------------ colouring


def _greedy_clique(cand: int, adj: tuple[int, ...]) -> list[int]:
    best: list[int] = []
    c = cand
    while c:
        low = c & -c
        v = low.bit_length() - 1
        clique = [v]
        grow = adj[v] & cand
        while grow:
            u = max(from_mask(grow), key=lambda w: ((adj[w] & grow).bit_count(), -w))
            clique.append(u)
            grow &= adj[u]
        if len(clique) > len(best):
            best = clique
        c ^= low
    return best


def _dsatur_greedy(vertices: list[int], adj: tuple[int, ...]) -> dict[int, int]:
    color: dict[int, int] = {}
    while len(color) < len(vertices):
        v = max((w for w in vertices if w not in color),
                key=lambda w: (len({color[u] for u in from_mask(adj[w]) if u in color}),
                               (adj[w]).bit_count(), -w))
        used = {color[u] for u in from_mask(adj[v]) if u in color}
        color[v] = next(k for k in range(len(vertices)) if k not in used)
    return color


class _Colorer:
    """Backtracking k-colouring test in saturation order."""

    def __init__(self, vertices: list[int], adj: tuple[int, ...], meter: Meter):
        self.vertices = vertices
        self.adj = adj
        self.meter = meter

    def colorable(self, k: int, seed: list[int]) -> dict[int, int] | None:
        color = {v: i for i, v in enumerate(seed)}
        if self._extend(color, k):
            return color
        return None

    def _extend(self, color: dict[int, int], k: int) -> bool:
        self.meter.tick()
        if len(color) == len(self.vertices):
            return True
        adj = self.adj
        best, best_key, best_used = -1, None, None
        for w in self.vertices:
            if w in color:
                continue
            used = {color[u] for u in from_mask(adj[w]) if u in color}
            key = (len(used), sum(1 for u in from_mask(adj[w]) if u not in color), -w)
            if best_key is None or key > best_key:
                best, best_key, best_used = w, key, used
        if len(best_used) >= k:
            return False
        opened = max(color.values(), default=-1) + 1
        for col in range(min(k, opened + 1)):
            if col in best_used:
                continue
            color[best] = col
            if self._extend(color, k):
                return True
            del color[best]
        return False


def chromatic_number(graph: Graph, budget: Budget | None = None, *, meter: Meter | None = None,
                     independence: int | None = None) -> tuple[Partition, int, int, bool]:
    """Exact chromatic number by backtracking with clique lower bounds.

    ``independence`` (any upper bound on the independence number) adds the
    bound ``ceil(n / alpha)``.  Returns ``(best colouring, lower, upper, exact)``.
    """
    meter = meter or Meter(budget)
    adj = graph.masks
    n = graph.vertex_count
    _deep_recursion(n)
    if n == 0:
        return Partition(()), 0, 0, True
    floor = -(-n // independence) if independence else 1
    lower, upper = floor, 0
    classes: dict[int, list[int]] = {}
    timed_out = False
    for comp in _components_of(n, adj):
        vertices = from_mask(comp)
        clique = _greedy_clique(comp, adj)
        coloring = _dsatur_greedy(vertices, adj)
        hi = max(coloring.values()) + 1
        k = max(len(clique), floor)
        if not timed_out:
            colorer = _Colorer(vertices, adj, meter)
            try:
                while k < hi:
                    found = colorer.colorable(k, clique)
                    if found is not None:
                        coloring, hi = found, k
                        break
                    k += 1
                k = hi
            except BudgetExceeded:
                timed_out = True
        lower = max(lower, min(k, hi))
        upper = max(upper, hi)
        for v, col in coloring.items():
            classes.setdefault(col, []).append(v)
    partition = _canonical_partition(classes.values())
    return partition, lower, upper, lower == upper


def _canonical_partition(classes) -> Partition:
    ordered = sorted((sorted(c) for c in classes if c), key=lambda c: c[0])
    return Partition.of(ordered)


# ------------------------------------------------------------ dispatch


def compute_invariant(graph: Graph, kind: InvariantKind, budget: Budget | None = None) -> InvariantResult:
    """Compute one invariant exactly, or bounds if the budget runs out.

    Certificates of exact results are re-verified before returning.
    """
    meter = Meter(budget)
    n = graph.vertex_count
    if kind is InvariantKind.TOTAL_DOMINATION and graph.isolated_vertices():
        raise GraphError(f"total domination undefined: vertex {graph.isolated_vertices()[0]} is isolated")
    if n == 0:
        cert = Partition(()) if kind is InvariantKind.INJECTIVE_CHROMATIC else frozenset()
        return InvariantResult(kind, 0, 0, Status.EXACT, cert, 0, 0)
    if kind in (InvariantKind.TWO_PACKING, InvariantKind.OPEN_PACKING):
        nb = Neighborhood.CLOSED if kind is InvariantKind.TWO_PACKING else Neighborhood.OPEN
        result = max_independent_set(conflict_graph(graph, nb), kind=kind, meter=meter)
    elif kind in (InvariantKind.DOMINATION, InvariantKind.TOTAL_DOMINATION):
        cover = graph.closed_masks if kind is InvariantKind.DOMINATION else graph.masks
        found, lower, upper, exact = min_cover(n, cover, meter)
        status = Status.EXACT if exact else Status.TIMEOUT
        result = InvariantResult(kind, lower, upper, status, frozenset(found), meter.elapsed_ms(), meter.nodes)
    elif kind is InvariantKind.INJECTIVE_CHROMATIC:
        conflicts = conflict_graph(graph, Neighborhood.OPEN)
        mis = max_independent_set(conflicts, meter=meter)
        partition, lower, upper, exact = chromatic_number(conflicts, meter=meter, independence=mis.upper)
        status = Status.EXACT if exact else Status.TIMEOUT
        result = InvariantResult(kind, lower, upper, status, partition, meter.elapsed_ms(), meter.nodes)
    else:
        raise ValueError(f"unknown invariant {kind!r}")
    _check_certificate(graph, result)
    return result


def _check_certificate(graph: Graph, result: InvariantResult) -> None:
    cert = result.certificate
    if cert is None:
        return
    if isinstance(cert, Partition):
        verdict = verify_injective_coloring(graph, cert)
        size = len(cert)
        witnessed = result.upper
    else:
        verdict = verify_set(graph, cert, result.kind.set_kind)
        size = len(cert)
        witnessed = result.lower if result.kind.maximize else result.upper
    if not verdict:
        raise AssertionError(f"solver produced an invalid certificate: {verdict.message}")
    if size != witnessed:
        raise AssertionError(f"certificate size {size} does not match bound {witnessed}")


# ------------------------------------------------------------ oracle and bounds

ORACLE_MAX_VERTICES = 20
ORACLE_MAX_VERTICES_CHI = 12


def brute_force_oracle(graph: Graph, kind: InvariantKind) -> int:
    """Exhaustive evaluation over all vertex subsets, straight from the definitions."""
    n = graph.vertex_count
    limit = ORACLE_MAX_VERTICES_CHI if kind is InvariantKind.INJECTIVE_CHROMATIC else ORACLE_MAX_VERTICES
    if n > limit:
        raise GraphError(f"brute force oracle is limited to {limit} vertices for {kind.value}")
    if kind is InvariantKind.TOTAL_DOMINATION and graph.isolated_vertices():
        raise GraphError("total domination undefined with isolated vertices")
    closed = [to_mask(graph.closed_neighbors(v)) for v in range(n)]
    opened = [to_mask(graph.neighbors(v)) for v in range(n)]
    full = (1 << n) - 1

    if kind in (InvariantKind.TWO_PACKING, InvariantKind.OPEN_PACKING):
        nb = closed if kind is InvariantKind.TWO_PACKING else opened
        for size in range(n, -1, -1):
            for combo in combinations(range(n), size):
                union, total = 0, 0
                for v in combo:
                    union |= nb[v]
                    total += nb[v].bit_count()
                if union.bit_count() == total:
                    return size
    if kind in (InvariantKind.DOMINATION, InvariantKind.TOTAL_DOMINATION):
        nb = closed if kind is InvariantKind.DOMINATION else opened
        for size in range(0, n + 1):
            for combo in combinations(range(n), size):
                union = 0
                for v in combo:
                    union |= nb[v]
                if union == full:
                    return size
    if kind is InvariantKind.INJECTIVE_CHROMATIC:
        # sum of open-neighborhood sizes equals the size of their union iff disjoint
        packing = [False] * (1 << n)
        for s in range(1 << n):
            union, total = 0, 0
            for v in range(n):
                if s >> v & 1:
                    union |= opened[v]
                    total += opened[v].bit_count()
            packing[s] = union.bit_count() == total
        best = [0] * (1 << n)
        for s in range(1, 1 << n):
            low = s & -s
            rest = s ^ low
            value = n + 1
            sub = rest
            while True:
                cls_ = sub | low
                if packing[cls_]:
                    value = min(value, 1 + best[s ^ cls_])
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            best[s] = value
        return best[full]
    raise GraphError(f"no oracle for {kind!r}")


def regular_sphere_bounds(graph: Graph) -> tuple[int, int]:
    """``(floor(n/(r+1)), floor(n/r))`` for an r-regular graph with r >= 1."""
    r = graph.regular_degree()
    if r is None:
        raise GraphError("sphere bounds need a regular graph")
    if r < 1:
        raise GraphError("sphere bounds need degree at least 1")
    n = graph.vertex_count
    return n // (r + 1), n // r
