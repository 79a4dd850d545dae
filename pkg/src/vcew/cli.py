"""Command-line front end: solve / verify / kernelize / reduce-lc / gen.

Results go to standard output as canonical JSON (stats stripped, so reruns
are byte-identical); counters and progress notes go to standard error.
Exit codes: 0 clean run, 2 input error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from vcew import generators, io, oracle, preweight, reduction, treewidth, vertex_cover
from vcew.errors import CapacityError, ParseError, UnsupportedVariantError, ValidationError
from vcew.graph import (
    Graph,
    PartialWeightAssignment,
    WeightAssignment,
    extends,
    find_conflicts,
    induced_colors,
    is_proper,
    isolated_edges,
)
from vcew.listcolor import normalize_instance

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPACITY = 3

ORACLE_MAX_FREE = 24
TW_MAX_WIDTH = 4
TW_MAX_DEGREE = 8


def _err(message: str) -> None:
    print(f"vcew: {message}", file=sys.stderr)


def _emit(record: io.ResultRecord) -> None:
    sys.stdout.write(io.emit_result(record.without_stats()))
    if record.stats:
        print("stats: " + json.dumps(dict(sorted(record.stats.items()))), file=sys.stderr)


def _pick_algo(args, g: Graph, pre: PartialWeightAssignment) -> tuple[str, treewidth.TreeDecomposition | None]:
    td = None
    if args.td:
        td = io.parse_td(Path(args.td).read_text())
        if not treewidth.validate_decomposition(g, td):
            raise ValidationError(f"{args.td} is not a valid decomposition of the graph")
    if args.algo != "auto":
        return args.algo, td
    if any(value == 0 for value in pre.values()):
        return "tw", td
    if pre:
        return "prewt", td
    if len(g.edges) - len(pre) <= args.oracle_max_free:
        return "oracle", td
    width_source = td if td is not None else treewidth.compute_decomposition(g)
    if td is None:
        td = width_source
    if width_source.width() <= args.tw_max_width and g.max_degree() <= args.tw_max_degree:
        return "tw", td
    return "vc", td


def cmd_solve(args) -> int:
    try:
        g, pre = io.parse_graph(Path(args.graph).read_text())
        algo, td = _pick_algo(args, g, pre)
    except (OSError, ParseError, ValidationError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    if args.threads > 1:
        _err("parallel search is not implemented; running single-threaded")
    started = time.perf_counter()
    stats: dict[str, int] = {"free_edges": len(g.edges) - len(pre)}
    if args.seed is not None:
        stats["seed"] = args.seed
    witness: WeightAssignment | None
    try:
        shortcut = isolated_edges(g)
        if shortcut:
            witness = None
            stats["isolated_edges"] = len(shortcut)
        elif algo == "oracle":
            search = oracle.SearchStats()
            witness = oracle.solve_exhaustive(g, pre, budget=args.budget, cutoff=args.cutoff, stats=search)
            stats["search_nodes"] = search.nodes
        elif algo == "tw":
            if td is None:
                td = treewidth.compute_decomposition(g)
            elif not treewidth.validate_decomposition(g, td):
                raise ValidationError("provided decomposition is invalid")
            ntd = treewidth.make_nice(td, g)
            run = treewidth.run_dp(g, ntd, pre)
            witness = None
            if run.solution_edge_ids is not None:
                witness = {e: 0 for e in g.edges}
                for i in run.solution_edge_ids:
                    witness[g.edges[i]] = 1
            stats.update(width=ntd.width, dp_nodes=len(ntd.nodes), states_stored=run.states_stored, max_states=run.max_states)
        elif algo == "vc":
            if pre:
                raise UnsupportedVariantError("the vertex-cover pipeline handles the base problem only")
            witness = vertex_cover.solve_vc(g, k=args.k, budget_override=args.budget, cutoff=args.cutoff)
        elif algo == "prewt":
            e1 = preweight.ones_only(pre)
            if args.k is not None:
                k = args.k
                if vertex_cover.exact_vertex_cover(g, k) is None:
                    raise ValidationError(f"graph has no vertex cover of size <= {k}")
            else:
                _, k = vertex_cover.minimum_vertex_cover(g)
            red = preweight.apply_reduction(g, e1, k)
            if red.deletions:
                sys.stderr.write(preweight.deletion_log_text(red))
            witness = preweight.solve_prewt(g, e1, k, cutoff=args.cutoff)
            stats["k"] = k
            stats["rule_deletions"] = len(red.deletions)
        else:
            raise ValidationError(f"unknown algorithm {algo!r}")
    except CapacityError as exc:
        _err(str(exc))
        _emit(io.ResultRecord(status="unknown", algorithm=algo, verified=False))
        return EXIT_CAPACITY
    except (UnsupportedVariantError, ValidationError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    stats["elapsed_ms"] = int((time.perf_counter() - started) * 1000)
    if witness is None:
        _emit(io.ResultRecord(status="no", algorithm=algo, verified=True, stats=stats))
        return EXIT_OK
    verified = is_proper(g, witness) and extends(witness, pre)
    if not verified:
        raise AssertionError(f"{algo} produced a witness that failed re-verification")
    record = io.ResultRecord(
        status="yes",
        algorithm=algo,
        verified=True,
        witness=io.witness_from_assignment(g, witness),
        colors=tuple(induced_colors(g, witness)),
        stats=stats,
    )
    _emit(record)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        g, _ = io.parse_graph(Path(args.graph).read_text())
        w = io.parse_weights(Path(args.weights).read_text(), g)
    except (OSError, ParseError, ValidationError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    conflicts = find_conflicts(g, w)
    if conflicts:
        print("improper")
        for u, v in conflicts:
            print(f"conflict {u + 1} {v + 1}")
    else:
        print("proper")
    return EXIT_OK


def cmd_kernelize(args) -> int:
    try:
        g, pre = io.parse_graph(Path(args.graph).read_text())
        if pre:
            raise ValidationError("kernelization applies to the base problem; drop the pre-weights")
        if args.k is not None and vertex_cover.exact_vertex_cover(g, args.k) is None:
            raise ValidationError(f"graph has no vertex cover of size <= {args.k}")
        kernel = vertex_cover.kernelize(g)
    except (OSError, ParseError, ValidationError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    prefix = args.output or str(Path(args.graph).with_suffix("")) + ".kernel"
    Path(prefix + ".gr").write_text(io.emit_graph(kernel.graph))
    Path(prefix + ".map").write_text(vertex_cover.export_kernel_mapping(kernel))
    class_count = len(kernel.class_sizes_before)
    if class_count > 4**kernel.k_matching:
        raise AssertionError("class count exceeds 2^(2k)")
    print(f"kernel {kernel.graph.vertex_count} vertices {len(kernel.graph.edges)} edges")
    print(f"wrote {prefix}.gr and {prefix}.map")
    stats = {
        "k_matching": kernel.k_matching,
        "cap": kernel.cap,
        "classes": class_count,
        "removed": len(kernel.removed),
        "class_sizes_before": list(kernel.class_sizes_before),
        "class_sizes_after": list(kernel.class_sizes_after),
    }
    print("stats: " + json.dumps(stats), file=sys.stderr)
    return EXIT_OK


def cmd_reduce_lc(args) -> int:
    try:
        inst = io.parse_listcoloring(Path(args.instance).read_text())
        normalized = normalize_instance(inst)
        red = reduction.build_reduction(normalized.instance, args.n_scale)
    except (OSError, ParseError, ValidationError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    prefix = args.output or str(Path(args.instance).with_suffix("")) + ".reduced"
    Path(prefix + ".gr").write_text(io.emit_graph(red.graph))
    Path(prefix + ".roles").write_text(reduction.emit_roles(red))
    if args.dot:
        Path(prefix + ".dot").write_text(reduction.to_dot(red))
    z_degree = red.graph.degree(red.z) if red.z is not None else 0
    print(f"reduced {red.graph.vertex_count} vertices {len(red.graph.edges)} edges")
    print(f"N {red.big_n} z-degree {z_degree} removed {len(normalized.removed_vertices)}")
    print(f"wrote {prefix}.gr and {prefix}.roles")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.kind == "random":
            g, pre = generators.random_graph(
                args.n, args.p, args.seed, pre_fraction=args.pre, pre_ones_only=args.pre_ones
            )
        elif args.kind == "planted":
            sizes = [int(tok) for tok in args.classes.split(",") if tok]
            g = generators.planted_twin_graph(
                args.k, sizes, args.seed, cover_edge_p=args.cover_p, full_sig=args.full_sig
            )
            pre = {}
        else:  # gadget
            if args.gadget == "suspended":
                g, pre = generators.suspended_host(args.paths), {}
            elif args.gadget == "type-a":
                g, pre = generators.type_a_host(args.k, args.headroom), {}
            else:  # type-b
                host = generators.pinned_chain_host(args.k, args.n_scale)
                g, pre = host.graph, host.pre
    except (ValidationError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    text = io.emit_graph(g, pre)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output} ({g.vertex_count} vertices {len(g.edges)} edges)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vcew", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide an instance and print a certificate")
    solve.add_argument("graph")
    solve.add_argument("--algo", choices=["auto", "oracle", "tw", "vc", "prewt"], default="auto")
    solve.add_argument("--td", help="tree decomposition file for the tw route")
    solve.add_argument("--budget", type=int, default=None, help="max weight-1 free edges")
    solve.add_argument("--k", type=int, default=None, help="vertex cover size for vc/prewt")
    solve.add_argument("--seed", type=int, default=None, help="recorded in stats for reproducibility")
    solve.add_argument("--threads", type=int, default=1)
    solve.add_argument("--cutoff", type=int, default=oracle.DEFAULT_CUTOFF)
    solve.add_argument("--oracle-max-free", type=int, default=ORACLE_MAX_FREE)
    solve.add_argument("--tw-max-width", type=int, default=TW_MAX_WIDTH)
    solve.add_argument("--tw-max-degree", type=int, default=TW_MAX_DEGREE)
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser("verify", help="check a weight certificate")
    verify.add_argument("graph")
    verify.add_argument("weights")
    verify.set_defaults(func=cmd_verify)

    kern = sub.add_parser("kernelize", help="write the twin-class kernel and mapping")
    kern.add_argument("graph")
    kern.add_argument("--k", type=int, default=None)
    kern.add_argument("-o", "--output", default=None, help="output prefix")
    kern.set_defaults(func=cmd_kernelize)

    red = sub.add_parser("reduce-lc", help="build the gadget reduction of a list-coloring instance")
    red.add_argument("instance")
    red.add_argument("--N", dest="n_scale", type=int, default=None, help="chain scale override")
    red.add_argument("-o", "--output", default=None, help="output prefix")
    red.add_argument("--dot", action="store_true", help="also write a DOT file")
    red.set_defaults(func=cmd_reduce_lc)

    gen = sub.add_parser("gen", help="generate instances")
    gensub = gen.add_subparsers(dest="kind", required=True)
    rnd = gensub.add_parser("random")
    rnd.add_argument("--n", type=int, required=True)
    rnd.add_argument("--p", type=float, default=0.4)
    rnd.add_argument("--seed", type=int, required=True)
    rnd.add_argument("--pre", type=float, default=0.0, help="pre-weighting fraction")
    rnd.add_argument("--pre-ones", action="store_true", help="pre-weights all 1")
    rnd.add_argument("-o", "--output", default=None)
    rnd.set_defaults(func=cmd_gen)
    pl = gensub.add_parser("planted")
    pl.add_argument("--k", type=int, required=True)
    pl.add_argument("--classes", required=True, help="comma-separated class sizes")
    pl.add_argument("--seed", type=int, required=True)
    pl.add_argument("--cover-p", type=float, default=0.0)
    pl.add_argument("--full-sig", action="store_true", help="classes neighbor the whole cover")
    pl.add_argument("-o", "--output", default=None)
    pl.set_defaults(func=cmd_gen)
    gad = gensub.add_parser("gadget")
    gadsub = gad.add_subparsers(dest="gadget", required=True)
    susp = gadsub.add_parser("suspended")
    susp.add_argument("--paths", type=int, required=True)
    susp.add_argument("-o", "--output", default=None)
    susp.set_defaults(func=cmd_gen, kind="gadget")
    ta = gadsub.add_parser("type-a")
    ta.add_argument("--k", type=int, required=True)
    ta.add_argument("--headroom", type=int, default=0)
    ta.add_argument("-o", "--output", default=None)
    ta.set_defaults(func=cmd_gen, kind="gadget")
    tb = gadsub.add_parser("type-b")
    tb.add_argument("--k", type=int, required=True)
    tb.add_argument("--N", dest="n_scale", type=int, required=True)
    tb.add_argument("-o", "--output", default=None)
    tb.set_defaults(func=cmd_gen, kind="gadget")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
