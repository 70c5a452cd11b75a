"""Realisations of finite posets inside homomorphism orders.

Three targets: disjoint unions of directed cycles under plain homomorphisms,
sunlet gadgets under locally injective homomorphisms, and line graphs of
sunlet indicator products (the divisibility-set order).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import prod
from typing import Dict, Iterable, List, Optional, Tuple

from .config import setting
from .errors import InvalidParameter, InvariantViolation, PreconditionError, SearchBudgetExhausted
from .families import generate, indicator, indicator_product, line_graph, sunlet
from .graph import Graph, disjoint_union_all
from .homomorphisms import HomConstraint, check_hom, find_hom
from .posets import Poset, is_prime, layered_embedding
from .schemas import EmbeddingMismatch, EmbeddingReport
from .workers import run_cells

logger = logging.getLogger(__name__)


def _require_primes(p: Poset, least: int) -> None:
    for x in p.labels:
        if x < least or not is_prime(x) or x % 2 == 0:
            raise PreconditionError(f"label {x} is not an odd prime >= {least}", x)


def embed_into_dicycles(p: Poset) -> Dict[int, Graph]:
    """x -> disjoint union of the directed cycles of length ∏S for S in U(x)."""
    _require_primes(p, 3)
    family = layered_embedding(p)
    return {x: disjoint_union_all([generate("dicycle", prod(s)) for s in sets], directed=True)
            for x, sets in family.items()}


# sunlet gadgets


@dataclass(frozen=True)
class Gadget:
    """H(n): left sunlet of length ``left`` bridged to a right sunlet of length ``right``.

    Vertices: left cycle ``0..L-1``, left pendants ``L..2L-1``, right cycle
    ``2L..2L+R-1``, right pendants ``2L+R..2L+2R-1``; the bridge joins left
    pendant ``p(n)`` with right pendant 0.
    """

    label: int
    left: int
    right: int
    graph: Graph

    def right_cycle(self, i: int) -> int:
        return 2 * self.left + i % self.right


def sunlet_factors(p: Poset, n: int) -> Tuple[int, ...]:
    """l(n): labels not above n numerically that lie above n in the order."""
    return tuple(sorted(q for q in p.labels if q <= n and p.le(n, q)))


def sunlet_gadget(p: Poset, n: int) -> Gadget:
    pn = prod(sunlet_factors(p, n))
    left, right = 2 * pn, 2 ** n
    edges = [(u + 2 * left, v + 2 * left) for u, v in sunlet(right).undirected_edges()]
    edges += sunlet(left).undirected_edges()
    edges.append((left + pn, 2 * left + right))
    return Gadget(n, left, right, Graph.from_edges(2 * (left + right), edges))


def _gadget_size(p: Poset, n: int) -> int:
    return 2 * (2 * prod(sunlet_factors(p, n)) + 2 ** n)


def _below(p: Poset, n: int) -> List[int]:
    return [k for k in sorted(p.labels) if k < n and p.le(k, n)]


def _ladder_size(p: Poset, n: int, memo: Dict[int, int]) -> int:
    if n not in memo:
        memo[n] = _gadget_size(p, n) + sum(_ladder_size(p, k, memo) for k in _below(p, n))
    return memo[n]


def sunlet_ladder(p: Poset, n: int, memo: Optional[Dict[int, Graph]] = None) -> Graph:
    """E(n): H(n) at vertices ``0..|H(n)|-1`` followed by a copy of E(k) for each k < n with k <=_P n.

    Each copy is tied to H(n) by the edge l_{k,0} - r_{n,2^k-1}; l_{k,0} is
    vertex 0 of the copy.
    """
    memo = {} if memo is None else memo
    if n in memo:
        return memo[n]
    head = sunlet_gadget(p, n)
    edges = list(head.graph.undirected_edges())
    base = head.graph.n
    for k in _below(p, n):
        sub = sunlet_ladder(p, k, memo)
        edges += [(u + base, v + base) for u, v in sub.undirected_edges()]
        edges.append((base, head.right_cycle(2 ** k - 1)))
        base += sub.n
    memo[n] = Graph.from_edges(base, edges)
    return memo[n]


def embed_into_sunlet_gadgets(p: Poset, *, max_vertices: Optional[int] = None) -> Dict[int, Graph]:
    """n -> E(n); locally injective homomorphisms between the images follow the order."""
    _require_primes(p, 5)
    limit = setting("sunlets", "max_vertices", 2000) if max_vertices is None else max_vertices
    sizes: Dict[int, int] = {}
    for n in sorted(p.labels):
        total = _ladder_size(p, n, sizes)
        if total > limit:
            raise SearchBudgetExhausted(
                f"gadget for {n} needs {total} vertices (left factors {sunlet_factors(p, n)}), limit {limit}")
    built: Dict[int, Graph] = {}
    images = {n: sunlet_ladder(p, n, built) for n in sorted(p.labels)}
    for n, g in images.items():
        logger.debug("sunlet ladder for %d: %d vertices over %s", n, g.n, _below(p, n))
    return images


# line graphs of indicator products


def _check_line_params(a_set: Iterable[int], d: int) -> List[int]:
    values = sorted(set(a_set))
    if d < 3:
        raise InvalidParameter(f"indicator needs d >= 3, got {d}")
    if not values or any(a < 3 for a in values):
        raise InvalidParameter("sunlet lengths must be a non-empty set of integers >= 3")
    return values


def embed_into_line_graphs(a_set: Iterable[int], d: int = 3) -> Graph:
    """L(d, A): disjoint union of the line graphs L(G_{a,d}) over a in A."""
    values = _check_line_params(a_set, d)
    ind = indicator(d)
    parts = [line_graph(indicator_product(sunlet(a), ind.graph, ind.a, ind.b).graph).graph for a in values]
    return disjoint_union_all(parts)


def _wrap(n: int, target: int) -> Dict[int, int]:
    """Sunlet map S_n -> S_target winding the cycle around the shorter one."""
    f = {i: i % target for i in range(n)}
    f.update({i + n: i % target + target for i in range(n)})
    return f


def _product_index(legend, a: int, b: int):
    index = {}
    for i, (e, x) in enumerate(legend):
        if x == a:
            index[("v", e[0])] = i
        elif x == b:
            index[("v", e[1])] = i
        else:
            index[("e", e, x)] = i
    return index


def cyclic_wrap_witness(n: int, target: int, d: int = 3) -> Dict[int, int]:
    """Homomorphism L(G_{n,d}) -> L(G_{target,d}) lifted from the cyclic wrap S_n -> S_target."""
    _check_line_params([n, target], d)
    if n % target:
        raise PreconditionError(f"{target} does not divide {n}; no cyclic wrap exists", (n, target))
    ind = indicator(d)
    src = indicator_product(sunlet(n), ind.graph, ind.a, ind.b)
    dst = indicator_product(sunlet(target), ind.graph, ind.a, ind.b)
    src_index = {i: key for key, i in _product_index(src.legend, ind.a, ind.b).items()}
    dst_index = _product_index(dst.legend, ind.a, ind.b)
    wrap = _wrap(n, target)

    vertex_map: Dict[int, int] = {}
    for i, key in src_index.items():
        if key[0] == "v":
            vertex_map[i] = dst_index[("v", wrap[key[1]])]
        else:
            _, (u, v), x = key
            image = tuple(sorted((wrap[u], wrap[v])))
            # a reversed edge swaps a and b, which fixes every inner vertex
            vertex_map[i] = dst_index[("e", image, x)]
    if not check_hom(vertex_map, src.graph, dst.graph):
        raise InvariantViolation("cyclic wrap does not lift to the indicator products")

    src_line = line_graph(src.graph)
    dst_line = line_graph(dst.graph)
    dst_edges = {e: i for i, e in enumerate(dst_line.legend)}
    lifted = {i: dst_edges[tuple(sorted((vertex_map[u], vertex_map[v])))] for i, (u, v) in enumerate(src_line.legend)}
    if not check_hom(lifted, src_line.graph, dst_line.graph):
        raise InvariantViolation("cyclic wrap does not lift to the line graphs")
    return lifted


def line_graph_hom(n: int, target: int, d: int = 3, *, max_nodes: Optional[int] = None) -> Optional[Dict[int, int]]:
    """A homomorphism L(G_{n,d}) -> L(G_{target,d}): the wrap when target divides n, else a search."""
    if n % target == 0:
        return cyclic_wrap_witness(n, target, d)
    return find_hom(embed_into_line_graphs([n], d), embed_into_line_graphs([target], d), max_nodes=max_nodes)


# verification


def verify_embedding(
    images: Dict[int, Graph],
    p: Poset,
    comparator: HomConstraint = HomConstraint.PLAIN,
    *,
    max_nodes: Optional[int] = None,
    threads: Optional[int] = None,
) -> EmbeddingReport:
    """Check every ordered pair of images against the order with one search per cell."""
    comparator = HomConstraint(comparator)
    missing = [x for x in p.labels if x not in images]
    if missing:
        raise InvalidParameter(f"no image for elements {missing}")
    cells = [(a, b) for a in p.labels for b in p.labels]

    def decide(cell: Tuple[int, int]) -> Optional[bool]:
        a, b = cell
        if a == b:
            return True
        try:
            return find_hom(images[a], images[b], comparator, max_nodes=max_nodes) is not None
        except SearchBudgetExhausted as exc:
            logger.warning("cell %d -> %d exhausted its budget after %d nodes", a, b, exc.nodes)
            return None

    outcomes = run_cells(decide, cells, threads)
    mismatches = []
    exhausted = []
    for (a, b), observed in zip(cells, outcomes):
        if observed is None:
            exhausted.append((a, b))
        elif observed != p.le(a, b):
            mismatches.append(EmbeddingMismatch(lower=a, upper=b, expected=p.le(a, b), observed=observed))
    logger.info("verified %d cells under %s: %d mismatches, %d exhausted",
                len(cells), comparator.value, len(mismatches), len(exhausted))
    return EmbeddingReport(comparator=comparator.value, elements=list(p.labels), cells=len(cells),
                           mismatches=mismatches, exhausted=exhausted)


def embed_poset_into_line_graphs(p: Poset, d: int = 3) -> Dict[int, Graph]:
    """x -> L(d, {∏S : S in U(x)}); with prime labels divisibility mirrors dominance."""
    _require_primes(p, 3)
    family = layered_embedding(p)
    return {x: embed_into_line_graphs({prod(s) for s in sets}, d) for x, sets in family.items()}
