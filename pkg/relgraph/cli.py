#!/usr/bin/env python3
"""Command line entry point: one subcommand per library operation.

Graphs, relations and posets are read from files in the text formats of
``relgraph.formats`` (``-`` reads standard input). Decisions exit with 1
when the answer is negative; input errors exit with 2 and exhausted
search budgets with 3.
"""
import argparse
import logging
import sys
from functools import partial
from typing import Dict, List, Optional

from . import __version__
from .config import init_logging, setting
from .cores import (
    all_self_relations_automorphic,
    cocore,
    graph_core,
    has_property_N,
    has_property_Nstar,
    is_cocore,
    is_point_determining,
    is_r_core,
    pd_quotient,
    r_core,
)
from .drm import drm
from .embeddings import (
    embed_into_dicycles,
    embed_into_sunlet_gadgets,
    embed_poset_into_line_graphs,
    verify_embedding,
)
from .enumeration import (
    UniverseSpec,
    duality_for_embeddings,
    duality_for_full_homs,
    enumerate_universe,
    find_gaps,
    parse_comparator,
    pr_core_checks,
    reduce_fulrel_to_surhom,
    reduce_hom_to_fulrel,
    verify_duality,
)
from .errors import EXIT_NEGATIVE, EXIT_OK, RelgraphError, exit_code_for
from .families import Family, generate
from .formats import (
    dump_graph,
    dump_relation,
    read_graph,
    read_poset,
    read_relation,
)
from .graph import Graph
from .homomorphisms import HomConstraint, find_hom, is_core
from .posets import Poset
from .relations import apply_strong, apply_weak, apply_weighted
from .schemas import HomResult, PropsReport
from .search import find_relation

logger = logging.getLogger(__name__)

TARGETS = ("dicycles", "sunlets", "linegraphs")
DEFAULT_COMPARATOR = {
    "dicycles": HomConstraint.PLAIN,
    "sunlets": HomConstraint.LOCALLY_INJECTIVE,
    "linegraphs": HomConstraint.PLAIN,
}


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# commands


def cmd_apply(args) -> int:
    g = read_graph(args.graph)
    r = read_relation(args.relation)
    if args.mode == "weighted":
        result = apply_weighted(g.adjacency_matrix(), r)
        _emit("\n".join(" ".join(str(int(x)) for x in row) for row in result))
    elif args.mode == "weak":
        _emit(dump_graph(apply_weak(g, r)))
    else:
        _emit(dump_graph(apply_strong(g, r)))
    return EXIT_OK


def cmd_check_rel(args) -> int:
    g, r, h = read_graph(args.graph), read_relation(args.relation), read_graph(args.target)
    ok = apply_strong(g, r) == h
    _emit("yes" if ok else "no")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_rcore(args) -> int:
    _emit(dump_graph(r_core(read_graph(args.graph))))
    return EXIT_OK


def cmd_cocore(args) -> int:
    _emit(dump_graph(cocore(read_graph(args.graph))))
    return EXIT_OK


def cmd_core(args) -> int:
    _emit(dump_graph(graph_core(read_graph(args.graph), max_nodes=args.max_nodes)))
    return EXIT_OK


def cmd_pd(args) -> int:
    _emit(dump_graph(pd_quotient(read_graph(args.graph)).quotient))
    return EXIT_OK


def cmd_drm(args) -> int:
    result = drm(read_graph(args.graph))
    lines = ["blocks " + " | ".join(" ".join(str(v) for v in sorted(b)) for b in result.blocks.blocks)]
    lines += [" ".join(str(x) for x in row) for row in result.matrix]
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_props(args) -> int:
    g = read_graph(args.graph)
    report = PropsReport(
        point_determining=is_point_determining(g),
        property_n=has_property_N(g),
        property_nstar=has_property_Nstar(g),
        cocore=is_cocore(g),
        r_core=is_r_core(g),
        core=is_core(g, max_nodes=args.max_nodes),
    )
    if args.check_automorphic:
        all_self_relations_automorphic(g, check_oracle=True, max_nodes=args.max_nodes)
    _emit(report.render())
    return EXIT_OK


def cmd_hom(args) -> int:
    constraint = HomConstraint.parse(args.constraint)
    g, h = read_graph(args.source), read_graph(args.target)
    f = find_hom(g, h, constraint, max_nodes=args.max_nodes, seed=args.seed)
    _emit(HomResult(constraint=constraint.value, found=f is not None, witness=f).render())
    return EXIT_OK if f is not None else EXIT_NEGATIVE


def cmd_find_relation(args) -> int:
    r = find_relation(read_graph(args.source), read_graph(args.target), args.full_domain, max_nodes=args.max_nodes)
    _emit(dump_relation(r) if r is not None else "NONE")
    return EXIT_OK if r is not None else EXIT_NEGATIVE


def _images(args, p: Poset) -> Dict[int, Graph]:
    if args.target == "dicycles":
        return embed_into_dicycles(p)
    if args.target == "sunlets":
        return embed_into_sunlet_gadgets(p)
    return embed_poset_into_line_graphs(p, args.d)


def cmd_embed(args) -> int:
    images = _images(args, read_poset(args.poset))
    for x in sorted(images):
        _emit(f"# element {x}")
        _emit(dump_graph(images[x]))
    return EXIT_OK


def cmd_verify_embedding(args) -> int:
    p = read_poset(args.poset)
    comparator = HomConstraint.parse(args.comparator) if args.comparator else DEFAULT_COMPARATOR[args.target]
    report = verify_embedding(_images(args, p), p, comparator, max_nodes=args.max_nodes, threads=args.threads)
    _emit(report.render())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _spec(args) -> UniverseSpec:
    return UniverseSpec(directed=args.directed, loops=args.loops, max_n=args.max_n)


def cmd_enumerate(args) -> int:
    universe = enumerate_universe(_spec(args))
    lines = [f"universe {universe.spec.key} graphs {len(universe)}"]
    lines += [f"n={n} count={c}" for n, c in sorted(universe.counts().items())]
    if args.list:
        lines += [dump_graph(g).rstrip("\n") for g in universe]
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_gaps(args) -> int:
    report = find_gaps(enumerate_universe(_spec(args)), parse_comparator(args.comparator),
                       max_nodes=args.max_nodes, threads=args.threads)
    _emit(report.render())
    return EXIT_OK


def cmd_duality(args) -> int:
    d_set = [read_graph(path) for path in args.d_graphs]
    comparator = HomConstraint.parse(args.comparator)
    if comparator is HomConstraint.FULL:
        pair = duality_for_full_homs(d_set, max_nodes=args.max_nodes)
    elif comparator in (HomConstraint.EMBEDDING, HomConstraint.MONO):
        pair = duality_for_embeddings(d_set, monomorphism=comparator is HomConstraint.MONO, loops=args.loops,
                                      max_nodes=args.max_nodes)
    else:
        raise RelgraphError(f"no duality construction for {comparator.value}; use embedding, mono or full")
    report = verify_duality(pair, enumerate_universe(_spec(args)), max_nodes=args.max_nodes, threads=args.threads)
    _emit(report.render())
    return EXIT_OK if report.holds else EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    g, h = read_graph(args.source), read_graph(args.target)
    out = reduce_hom_to_fulrel(g, h) if args.which == "hom2fulrel" else reduce_fulrel_to_surhom(g, h)
    _emit(dump_graph(out))
    return EXIT_OK


def cmd_pr_core(args) -> int:
    report = pr_core_checks(enumerate_universe(_spec(args)), max_nodes=args.max_nodes, threads=args.threads)
    _emit(report.render())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_generate(args) -> int:
    _emit(dump_graph(generate(args.family, args.k)))
    return EXIT_OK


def _search_flags(parser: argparse.ArgumentParser, seed, max_nodes, threads) -> None:
    parser.add_argument("--seed", type=int, default=seed, help="tie-breaking seed for the homomorphism search (hom)")
    parser.add_argument("--max-nodes", type=int, default=max_nodes,
                        help="node budget for homomorphism, relation and core searches")
    parser.add_argument("--threads", type=int, default=threads,
                        help="worker threads for verify-embedding, gaps, duality and pr-core")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relgraph", description="Graph relations, cores and homomorphism orders")
    parser.add_argument("--version", action="version", version=f"relgraph {__version__}")
    _search_flags(parser, setting("search", "seed", 0), setting("search", "max_nodes"), setting("workers", "threads", 1))
    # the same flags after the subcommand; unset ones keep the values given before it
    common = argparse.ArgumentParser(add_help=False)
    _search_flags(common, argparse.SUPPRESS, argparse.SUPPRESS, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)
    add = partial(sub.add_parser, parents=[common])

    p = add("apply", help="G*R, G⋆R or the weighted product")
    p.add_argument("graph")
    p.add_argument("relation")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--strong", dest="mode", action="store_const", const="strong")
    mode.add_argument("--weak", dest="mode", action="store_const", const="weak")
    mode.add_argument("--weighted", dest="mode", action="store_const", const="weighted")
    p.set_defaults(func=cmd_apply, mode="strong")

    p = add("check-rel", help="exit 0 when G * R equals H")
    p.add_argument("graph")
    p.add_argument("relation")
    p.add_argument("target")
    p.set_defaults(func=cmd_check_rel)

    for name, func, text in (
        ("rcore", cmd_rcore, "R-core"),
        ("cocore", cmd_cocore, "cocore"),
        ("core", cmd_core, "graph core"),
        ("pd", cmd_pd, "point-determining quotient"),
        ("drm", cmd_drm, "degree refinement matrix"),
    ):
        p = add(name, help=text)
        p.add_argument("graph")
        p.set_defaults(func=func)

    p = add("props", help="property N, N*, point-determining and core flags")
    p.add_argument("graph")
    p.add_argument("--check-automorphic", action="store_true", help="cross-check property N by relation search")
    p.set_defaults(func=cmd_props)

    p = add("hom", help="find a homomorphism of the given kind")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--constraint", default="plain", help=", ".join(c.value for c in HomConstraint))
    p.set_defaults(func=cmd_hom)

    p = add("find-relation", help="find R with G * R = H")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--full-domain", action="store_true")
    p.set_defaults(func=cmd_find_relation)

    for name, func in (("embed", cmd_embed), ("verify-embedding", cmd_verify_embedding)):
        p = add(name, help="realise a poset in a homomorphism order")
        p.add_argument("poset")
        p.add_argument("--target", choices=TARGETS, default="dicycles")
        p.add_argument("--d", type=int, default=3, help="dragon size for line-graph targets")
        if name == "verify-embedding":
            p.add_argument("--comparator", default=None)
        p.set_defaults(func=func)

    for name, func in (("enumerate", cmd_enumerate), ("gaps", cmd_gaps), ("duality", cmd_duality),
                       ("pr-core", cmd_pr_core)):
        p = add(name)
        p.add_argument("--directed", action="store_true")
        p.add_argument("--loops", action="store_true")
        p.add_argument("--max-n", type=int, default=4)
        if name == "enumerate":
            p.add_argument("--list", action="store_true", help="print every representative")
        if name == "gaps":
            p.add_argument("--comparator", default="plain")
        if name == "duality":
            p.add_argument("d_graphs", nargs="+", metavar="D")
            p.add_argument("--comparator", default="embedding")
        p.set_defaults(func=func)

    p = add("reduce", help="instance transformations between decision problems")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--which", choices=("hom2fulrel", "fulrel2surhom"), required=True)
    p.set_defaults(func=cmd_reduce)

    p = add("generate", help="emit a named graph")
    p.add_argument("--family", choices=[f.value for f in Family], required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    init_logging()
    args = build_parser().parse_args(argv)
    logger.info("relgraph %s", args.command)
    try:
        return args.func(args)
    except (RelgraphError, OSError) as exc:
        sys.stderr.write(f"relgraph {args.command}: {exc}\n")
        logger.warning("%s failed: %s", args.command, exc)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
