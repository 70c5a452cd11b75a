"""Named graph families, line graphs and the indicator construction."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from networkx.utils import UnionFind

from .errors import InvalidParameter, UnsupportedInput
from .graph import Edge, Graph

logger = logging.getLogger(__name__)


class Family(str, Enum):
    PATH = "path"
    DIPATH = "dipath"
    CYCLE = "cycle"
    DICYCLE = "dicycle"
    COMPLETE = "complete"
    SUNLET = "sunlet"
    DRAGON = "dragon"
    SINGLE_LOOP = "single_loop"
    EMPTY = "empty"


_MINIMUM = {
    Family.PATH: 1,
    Family.DIPATH: 1,
    Family.CYCLE: 3,
    Family.DICYCLE: 3,
    Family.COMPLETE: 1,
    Family.SUNLET: 3,
    Family.DRAGON: 3,
    Family.SINGLE_LOOP: 1,
    Family.EMPTY: 1,
}


def generate(family: Family | str, k: int) -> Graph:
    """Return the named graph.

    Numbering: path and dipath ``0-1-...-(k-1)``; cycles ``i -> i+1 mod k``;
    sunlet S_k has internal cycle ``0..k-1`` and pendant ``i+k`` on ``i``;
    dragon D_k is K_{k+1} on ``0..k`` with edge ``(0,k)`` replaced by ``0-(k+1)-k``.
    """
    family = Family(family)
    if k < _MINIMUM[family]:
        raise InvalidParameter(f"{family.value} needs k >= {_MINIMUM[family]}, got {k}")
    if family is Family.PATH:
        return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])
    if family is Family.DIPATH:
        return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)], directed=True)
    if family is Family.CYCLE:
        return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])
    if family is Family.DICYCLE:
        return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)], directed=True)
    if family is Family.COMPLETE:
        return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])
    if family is Family.SUNLET:
        return sunlet(k)
    if family is Family.DRAGON:
        return dragon(k)
    if family is Family.SINGLE_LOOP:
        return Graph.from_edges(1, [(0, 0)])
    return Graph.empty(k)


def sunlet(k: int) -> Graph:
    if k < 3:
        raise InvalidParameter(f"sunlet needs k >= 3, got {k}")
    cycle = [(i, (i + 1) % k) for i in range(k)]
    pendants = [(i, i + k) for i in range(k)]
    return Graph.from_edges(2 * k, cycle + pendants)


def dragon(d: int) -> Graph:
    if d < 3:
        raise InvalidParameter(f"dragon needs d >= 3, got {d}")
    edges = [(i, j) for i in range(d + 1) for j in range(i + 1, d + 1) if (i, j) != (0, d)]
    edges += [(0, d + 1), (d + 1, d)]
    return Graph.from_edges(d + 2, edges)


@dataclass(frozen=True)
class Indicator:
    graph: Graph
    a: int
    b: int


def indicator(d: int) -> Indicator:
    """I_d(a, b): D_d on ``0..d+1`` plus the path ``a-c-b`` (``d+2, d+3, d+4``), c joined to ``d+1``."""
    base = dragon(d)
    a, c, b = d + 2, d + 3, d + 4
    edges = base.undirected_edges() + [(a, c), (c, b), (c, d + 1)]
    return Indicator(Graph.from_edges(d + 5, edges), a, b)


@dataclass(frozen=True)
class LineGraph:
    graph: Graph
    legend: Tuple[Edge, ...]


def line_graph(g: Graph) -> LineGraph:
    """Nodes are the undirected edges of g in sorted order; ``legend[i]`` is node i's edge."""
    if g.directed or g.loops:
        raise UnsupportedInput("line graphs are defined here for loop-free undirected graphs")
    legend = tuple(g.undirected_edges())
    at: Dict[int, List[int]] = {}
    for i, (u, v) in enumerate(legend):
        at.setdefault(u, []).append(i)
        at.setdefault(v, []).append(i)
    pairs = set()
    for incident in at.values():
        for i in incident:
            for j in incident:
                if i != j:
                    pairs.add((i, j))
    return LineGraph(Graph(False, len(legend), frozenset(pairs)), legend)


@dataclass(frozen=True)
class IndicatorProduct:
    graph: Graph
    legend: Tuple[Tuple[Edge, int], ...]


def indicator_product(g: Graph, ind: Graph, a: int, b: int) -> IndicatorProduct:
    """Replace every edge of g by a copy of ``ind`` with a, b glued to its endpoints.

    Each undirected edge is oriented lower endpoint to higher; the classes of
    ``E_G x V_I`` are numbered endpoint classes first (by original vertex),
    then inner vertices edge by edge. ``legend[i]`` is a representative
    ``(edge, indicator vertex)`` of class i.
    """
    if g.directed or g.loops:
        raise UnsupportedInput("the indicator construction needs a loop-free undirected graph")
    if a == b:
        raise InvalidParameter("indicator terminals must be distinct")
    for t in (a, b):
        if not 0 <= t < ind.n:
            raise InvalidParameter(f"indicator terminal {t} out of range")
    arcs = g.undirected_edges()
    classes = UnionFind((e, x) for e in arcs for x in range(ind.n))
    starting: Dict[int, List[Edge]] = {}
    ending: Dict[int, List[Edge]] = {}
    for e in arcs:
        starting.setdefault(e[0], []).append(e)
        ending.setdefault(e[1], []).append(e)
    for v in range(g.n):
        out_edges = starting.get(v, [])
        in_edges = ending.get(v, [])
        for e in out_edges[1:]:
            classes.union((out_edges[0], a), (e, a))
        for e in in_edges[1:]:
            classes.union((in_edges[0], b), (e, b))
        if out_edges and in_edges:
            classes.union((in_edges[0], b), (out_edges[0], a))

    def sort_key(members):
        for e, x in sorted(members):
            if x == a:
                return (0, e[0])
            if x == b:
                return (0, e[1])
        e, x = min(members)
        return (1, e, x)

    groups = sorted((frozenset(s) for s in classes.to_sets()), key=sort_key)
    index = {member: i for i, group in enumerate(groups) for member in group}
    pairs = set()
    for e in arcs:
        for x, y in ind.edges:
            pairs.add((index[(e, x)], index[(e, y)]))
    legend = tuple(min(group) for group in groups)
    logger.debug("indicator product: %d edges -> %d vertices", len(arcs), len(groups))
    return IndicatorProduct(Graph(False, len(groups), frozenset(pairs)), legend)


def sunlet_indicator_graph(n: int, d: int) -> Graph:
    """G_{n,d} = S_n * I_d(a, b)."""
    ind = indicator(d)
    return indicator_product(sunlet(n), ind.graph, ind.a, ind.b).graph
