"""packlab command line.

Exit codes: 0 exact result or passed check, 2 inconclusive (budget ran out,
or a computed table value contradicts a recorded one), 1 error or failed
verification.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import constructions, injective
from .formats import (
    format_partition,
    format_vertex_set,
    parse_partition,
    parse_vertex_set,
    write_atomic,
)
from .graph import (
    Graph,
    GraphError,
    HypercubeLabeling,
    cartesian_product,
    chained_c5,
    direct_product,
    graph_from_edge_list,
    hypercube,
    prism,
)
from .report import ResultEntry, RunReport
from .solvers import Budget, InvariantKind, compute_invariant
from .table import direct_product_check, table1
from .verify import Partition, SetKind, verify_injective_coloring, verify_set

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2
DEFAULT_TIMEOUT_MS = 60_000


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def worker_count() -> int:
    raw = os.environ.get("PACKLAB_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------- graph sources


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="FILE", help="edge-list file")
    src.add_argument("--hypercube", type=int, metavar="N", help="hypercube Q_N")
    src.add_argument("--product", nargs=3, metavar=("KIND", "F1", "F2"),
                     help="cartesian or direct product of two edge-list files")
    src.add_argument("--chained-c5", type=int, metavar="K", help="the chained five-cycle graph G_K")


def _read_graph_file(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return graph_from_edge_list(text)
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


def load_graph(args) -> tuple[Graph, dict, HypercubeLabeling | None]:
    """Graph, its report descriptor and the hypercube labelling if any."""
    if args.graph:
        g = _read_graph_file(args.graph)
        desc = {"kind": "file", "params": {"path": args.graph}}
        labels = None
    elif args.hypercube is not None:
        g = hypercube(args.hypercube)
        desc = {"kind": "hypercube", "params": {"n": args.hypercube}}
        labels = HypercubeLabeling(args.hypercube)
    elif args.product:
        kind, f1, f2 = args.product
        if kind not in ("cartesian", "direct"):
            raise CliError(f"product kind must be 'cartesian' or 'direct', not {kind!r}")
        build = cartesian_product if kind == "cartesian" else direct_product
        g = build(_read_graph_file(f1), _read_graph_file(f2)).graph
        desc = {"kind": "product", "params": {"kind": kind, "left": f1, "right": f2}}
        labels = None
    else:
        g = chained_c5(args.chained_c5)
        desc = {"kind": "chained-c5", "params": {"k": args.chained_c5}}
        labels = None
    desc["hash"] = g.fingerprint()
    return g, desc, labels


def _emit(report: RunReport, fmt: str) -> None:
    sys.stdout.write(report.render(fmt))


# ---------------------------------------------------------------- commands


def cmd_compute(args) -> int:
    start = time.monotonic()
    graph, desc, labels = load_graph(args)
    kind = InvariantKind(args.invariant)
    budget = Budget(time_ms=args.timeout_ms, nodes=args.node_limit)
    result = compute_invariant(graph, kind, budget)
    cert_file = None
    if result.exact and args.certificate_out:
        if isinstance(result.certificate, Partition):
            text = format_partition(result.certificate, labels)
        else:
            text = format_vertex_set(result.certificate, labels)
        write_atomic(args.certificate_out, text)
        cert_file = args.certificate_out
    entry = ResultEntry.from_result(result, certificate_file=cert_file)
    report = RunReport("compute", desc, [entry], int((time.monotonic() - start) * 1000))
    _emit(report, args.format)
    return EXIT_OK if result.exact else EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    graph, _, labels = load_graph(args)
    try:
        text = Path(args.set).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {args.set}: {exc.strerror}") from None
    if args.kind == "injective-coloring":
        partition = parse_partition(text, graph, labels)
        problem = partition.structure_error(graph.vertex_count)
        if problem:
            print(f"FAIL: not a partition: {problem}")
            return EXIT_ERROR
        verdict = verify_injective_coloring(graph, partition)
        size = f"{len(partition)} classes"
    else:
        members = parse_vertex_set(text, graph, labels)
        verdict = verify_set(graph, members, SetKind(args.kind))
        size = f"{len(members)} vertices"
    if verdict:
        print(f"PASS: {args.kind} ({size})")
        return EXIT_OK
    print(f"FAIL: {args.kind}: {verdict.message}")
    return EXIT_ERROR


def _construct(target: list[str]) -> tuple[str, str]:
    """Return ``(file text, summary)`` for a construction target."""
    name, params = target[0], target[1:]

    def want(count: int) -> list[str]:
        if len(params) != count:
            raise CliError(f"target {name} takes {count} parameter(s)")
        return params

    def integer(s: str) -> int:
        try:
            return int(s)
        except ValueError:
            raise CliError(f"expected an integer, got {s!r}") from None

    if name == "hamming-code":
        k = integer(want(1)[0])
        code = constructions.hamming_perfect_code(k)
        n = 2 ** k - 1
        return format_vertex_set(code, HypercubeLabeling(n)), f"perfect code of Q{n} with {len(code)} vertices"
    if name == "coset-partition":
        k = integer(want(1)[0])
        part = constructions.hamming_coset_partition(k)
        n = 2 ** k - 1
        return format_partition(part, HypercubeLabeling(n)), f"{len(part)} perfect codes partitioning Q{n}"
    if name == "theorem4":
        n_raw, kind_raw = want(2)
        n = integer(n_raw)
        if kind_raw not in ("two-packing", "open-packing"):
            raise CliError("theorem4 kind must be two-packing or open-packing")
        packing = constructions.hypercube_packing_construction(n, SetKind(kind_raw))
        return format_vertex_set(packing, HypercubeLabeling(n)), f"{kind_raw} of Q{n} with {len(packing)} vertices"
    if name == "double-q8-T":
        want(0)
        packing = constructions.doubled_q8_set()
        return format_vertex_set(packing, HypercubeLabeling(9)), f"open packing of Q9 with {len(packing)} vertices"
    if name == "q8-T":
        want(0)
        packing = constructions.q8_seventeen_set()
        return format_vertex_set(packing, HypercubeLabeling(8)), f"2-packing of Q8 with {len(packing)} vertices"
    if name == "q6-partition":
        want(0)
        part = injective.q6_two_packing_partition()
        return format_partition(part, HypercubeLabeling(6)), f"{len(part)} maximum 2-packings partitioning Q6"
    raise CliError(f"unknown construction target {name!r}")


def cmd_construct(args) -> int:
    text, summary = _construct(args.target)
    if args.out:
        write_atomic(args.out, text)
        print(f"wrote {args.out}: {summary} (verified)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_table1(args) -> int:
    start = time.monotonic()
    table = table1(args.max_n, args.timeout_ms, workers=worker_count())
    report = RunReport("table1", None, table.cells, int((time.monotonic() - start) * 1000))
    if table.contradictions:
        report.extra["contradictions"] = table.contradictions
    if args.format == "text":
        sys.stdout.write(table.grid() + "\n\n")
    _emit(report, args.format)
    for problem in table.contradictions:
        print(f"CONTRADICTION: {problem}", file=sys.stderr)
    return EXIT_INCONCLUSIVE if table.contradictions else EXIT_OK


def cmd_direct_product_check(args) -> int:
    start = time.monotonic()
    factor = _read_graph_file(args.factor)
    check = direct_product_check(args.k, factor, args.timeout_ms)
    dim = 2 ** args.k
    lhs = ResultEntry.from_result(check.product, note=f"gamma_t(Q{dim} x H)")
    rhs = ResultEntry.from_result(check.factor_result, note="gamma_t(H)")
    desc = {"kind": "direct-product", "params": {"k": args.k, "factor": args.factor},
            "hash": factor.fingerprint()}
    report = RunReport("direct-product-check", desc, [lhs, rhs], int((time.monotonic() - start) * 1000))
    report.extra["multiplier"] = check.multiplier
    if check.conclusive:
        report.extra["formula"] = (f"{check.product.value} == {check.multiplier} * {check.factor_result.value}: "
                                   f"{'holds' if check.holds else 'FAILS'}")
    _emit(report, args.format)
    if not check.conclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if check.holds else EXIT_ERROR


def cmd_injective(args) -> int:
    status = injective.perfect_injective_status(args.n, Budget(time_ms=args.timeout_ms))
    print(f"Q{args.n}: {status.verdict.value} ({status.method})")
    if status.witness is not None:
        print(f"classes: {len(status.witness)} of sizes {sorted(set(status.witness.sizes()))}")
        if args.out:
            write_atomic(args.out, format_partition(status.witness, HypercubeLabeling(args.n)))
            print(f"wrote {args.out}")
    if status.obstruction:
        print("obstruction: " + ", ".join(f"{k}={v}" for k, v in status.obstruction.items()))
    return EXIT_INCONCLUSIVE if status.verdict is injective.Verdict.UNKNOWN else EXIT_OK


def cmd_graph(args) -> int:
    graph, _, _ = load_graph(args)
    if args.prism:
        graph = prism(graph).graph
    sys.stdout.write(graph.to_edge_list())
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="packlab", description="Exact packing and domination invariants with certificates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    formats = ("text", "json", "csv")

    p = sub.add_parser("compute", help="compute one invariant of a graph")
    _add_graph_source(p)
    p.add_argument("--invariant", required=True, choices=[k.value for k in InvariantKind])
    p.add_argument("--timeout-ms", type=int, default=DEFAULT_TIMEOUT_MS)
    p.add_argument("--node-limit", type=int, default=None, help="search-node budget")
    p.add_argument("--certificate-out", metavar="FILE")
    p.add_argument("--format", choices=formats, default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check a certificate file against a graph")
    _add_graph_source(p)
    p.add_argument("--set", required=True, metavar="FILE")
    p.add_argument("--kind", required=True, choices=[k.value for k in SetKind] + ["injective-coloring"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit a verified construction")
    p.add_argument("--target", required=True, nargs="+", metavar="ARG",
                   help="hamming-code K | coset-partition K | theorem4 N KIND | double-q8-T | q8-T | q6-partition")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("table1", help="reproduce the hypercube invariant table")
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--timeout-ms", type=int, default=DEFAULT_TIMEOUT_MS)
    p.add_argument("--format", choices=formats, default="text")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("direct-product-check", help="check gamma_t(Q_{2^k} x H) = 2^(2^k-k) gamma_t(H)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--factor", required=True, metavar="FILE")
    p.add_argument("--timeout-ms", type=int, default=DEFAULT_TIMEOUT_MS)
    p.add_argument("--format", choices=formats, default="text")
    p.set_defaults(func=cmd_direct_product_check)

    p = sub.add_parser("injective", help="perfect injective colourability of Q_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--timeout-ms", type=int, default=DEFAULT_TIMEOUT_MS)
    p.add_argument("--out", metavar="FILE", help="write the witness partition")
    p.set_defaults(func=cmd_injective)

    p = sub.add_parser("graph", help="print a graph as an edge list")
    _add_graph_source(p)
    p.add_argument("--prism", action="store_true", help="print the prism over the graph instead")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, GraphError, constructions.ConstructionError, ValueError, OSError) as exc:
        print(f"packlab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
