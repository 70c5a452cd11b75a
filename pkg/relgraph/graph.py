"""Immutable graph values and the structural constructions built on them.

Vertices are the dense integers ``0..n-1``. An undirected graph stores both
orientations of every edge and a loop as the single pair ``(v, v)``; every
construction below documents how it numbers the vertices it creates.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import InvalidParameter

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

INF = math.inf


@dataclass(frozen=True)
class Graph:
    directed: bool
    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameter(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for {self.n} vertices")
        if not self.directed:
            for u, v in self.edges:
                if (v, u) not in self.edges:
                    raise InvalidParameter(f"undirected graph misses reverse of ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], directed: bool = False) -> "Graph":
        """Build a graph; for undirected graphs each edge may be listed in one orientation."""
        pairs = set()
        for u, v in edges:
            pairs.add((int(u), int(v)))
            if not directed:
                pairs.add((int(v), int(u)))
        return cls(directed, n, frozenset(pairs))

    @classmethod
    def empty(cls, n: int, directed: bool = False) -> "Graph":
        return cls(directed, n, frozenset())

    # adjacency views

    @cached_property
    def out_nbrs(self) -> Tuple[FrozenSet[int], ...]:
        out: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def in_nbrs(self) -> Tuple[FrozenSet[int], ...]:
        inn: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            inn[v].add(u)
        return tuple(frozenset(s) for s in inn)

    @cached_property
    def out_masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << v for v in nbrs) for nbrs in self.out_nbrs)

    @cached_property
    def in_masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << v for v in nbrs) for nbrs in self.in_nbrs)

    def neighbors(self, x: int) -> FrozenSet[int]:
        """Open neighbourhood N(x): out-neighbours; contains x exactly when x has a loop."""
        return self.out_nbrs[x]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def has_loop(self, x: int) -> bool:
        return (x, x) in self.edges

    @cached_property
    def loops(self) -> FrozenSet[int]:
        return frozenset(u for u, v in self.edges if u == v)

    def degree(self, x: int) -> int:
        return len(self.out_nbrs[x])

    @cached_property
    def max_degree(self) -> int:
        return max((len(s) for s in self.out_nbrs), default=0)

    @cached_property
    def edge_count(self) -> int:
        """Arcs for digraphs, unordered pairs (loops once) for undirected graphs."""
        if self.directed:
            return len(self.edges)
        return len(self.undirected_edges())

    def undirected_edges(self) -> List[Edge]:
        return sorted((u, v) for u, v in self.edges if u <= v)

    def sorted_edges(self) -> List[Edge]:
        return self.undirected_edges() if not self.directed else sorted(self.edges)

    @cached_property
    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted(len(s) for s in self.out_nbrs))

    def adjacency_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            mat[u, v] = 1
        return mat

    def to_networkx(self) -> nx.Graph:
        """networkx view without loops; loop status is kept as the ``loop`` node attribute."""
        nxg = nx.DiGraph() if self.directed else nx.Graph()
        for v in range(self.n):
            nxg.add_node(v, loop=self.has_loop(v))
        nxg.add_edges_from((u, v) for u, v in self.edges if u != v)
        return nxg

    def underlying(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self.n))
        nxg.add_edges_from((u, v) for u, v in self.edges if u != v)
        return nxg

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under the vertex bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidParameter("relabelling must be a permutation of the vertex range")
        return Graph(self.directed, self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def __str__(self) -> str:
        kind = "digraph" if self.directed else "graph"
        return f"{kind}({self.n}; {self.sorted_edges()})"


@dataclass(frozen=True)
class Partition:
    blocks: Tuple[FrozenSet[int], ...]

    @classmethod
    def of(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        frozen = tuple(frozenset(b) for b in blocks)
        seen: set = set()
        for block in frozen:
            if not block:
                raise InvalidParameter("partition blocks must be non-empty")
            if block & seen:
                raise InvalidParameter(f"partition blocks overlap on {sorted(block & seen)}")
            seen |= block
        if seen != set(range(n)):
            raise InvalidParameter(f"partition does not cover 0..{n - 1}")
        return cls(frozen)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(frozenset([v]) for v in range(n)))

    @cached_property
    def block_of(self) -> Dict[int, int]:
        return {v: i for i, block in enumerate(self.blocks) for v in block}

    def __len__(self) -> int:
        return len(self.blocks)


class Neighborhoods(NamedTuple):
    open: FrozenSet[int]
    closed: FrozenSet[int]
    inn: FrozenSet[int]
    out: FrozenSet[int]


def _check_vertex(g: Graph, x: int) -> None:
    if not 0 <= x < g.n:
        raise InvalidParameter(f"vertex {x} out of range for {g.n} vertices")


def neighborhoods(g: Graph, x: int) -> Neighborhoods:
    _check_vertex(g, x)
    out = g.out_nbrs[x]
    return Neighborhoods(open=out, closed=out | {x}, inn=g.in_nbrs[x], out=out)


def components(g: Graph) -> List[FrozenSet[int]]:
    """Connected components of the underlying undirected graph, ordered by least vertex."""
    comps = [frozenset(c) for c in nx.connected_components(g.underlying())]
    return sorted(comps, key=min)


def distance(g: Graph, u: int, v: int) -> float:
    _check_vertex(g, u)
    _check_vertex(g, v)
    try:
        return nx.shortest_path_length(g.underlying(), u, v)
    except nx.NetworkXNoPath:
        return INF


def _eccentricities(g: Graph) -> List[float]:
    lengths = dict(nx.all_pairs_shortest_path_length(g.underlying()))
    return [max((lengths[u].get(v, INF) for v in range(g.n)), default=0) for u in range(g.n)]


def radius(g: Graph) -> float:
    return min(_eccentricities(g), default=0)


def diameter(g: Graph) -> float:
    return max(_eccentricities(g), default=0)


def complement(g: Graph, simple: bool = False) -> Graph:
    """Complement including the diagonal; ``simple=True`` leaves loops untouched."""
    pairs = set()
    for u, v in product(range(g.n), repeat=2):
        if u == v and simple:
            if g.has_loop(u):
                pairs.add((u, u))
            continue
        if (u, v) not in g.edges:
            pairs.add((u, v))
    return Graph(g.directed, g.n, frozenset(pairs))


def is_complete_multipartite(g: Graph) -> bool:
    """Loop-free undirected graph whose complement is a disjoint union of cliques."""
    if g.directed or g.loops:
        return False
    co = complement(g, simple=True)
    return all(co.out_nbrs[u] >= comp - {u} for comp in components(co) for u in comp)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    keep = sorted(set(s))
    for x in keep:
        _check_vertex(g, x)
    index = {v: i for i, v in enumerate(keep)}
    return Graph(g.directed, len(keep), frozenset((index[u], index[v]) for u, v in g.edges if u in index and v in index))


def delete_closed_neighborhoods(g: Graph, s: Iterable[int]) -> Graph:
    removed: set = set()
    for x in s:
        _check_vertex(g, x)
        removed |= g.out_nbrs[x] | g.in_nbrs[x] | {x}
    return induced_subgraph(g, set(range(g.n)) - removed)


def quotient(g: Graph, p: Partition) -> Graph:
    """One vertex per block; blocks adjacent iff some cross edge exists, loops from inner edges."""
    if set(p.block_of) != set(range(g.n)) or len(p.block_of) != g.n:
        raise InvalidParameter("partition does not match the graph's vertex range")
    where = p.block_of
    return Graph(g.directed, len(p), frozenset((where[u], where[v]) for u, v in g.edges))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.directed != h.directed:
        raise InvalidParameter("cannot form the disjoint union of a graph and a digraph")
    shifted = {(u + g.n, v + g.n) for u, v in h.edges}
    return Graph(g.directed, g.n + h.n, frozenset(g.edges | shifted))


def disjoint_union_all(graphs: Sequence[Graph], directed: bool = False) -> Graph:
    result = Graph.empty(0, directed)
    for part in graphs:
        result = disjoint_union(result, part)
    return result


def vertex_multiplication(g: Graph, h: Sequence[int]) -> Graph:
    """Replace vertex x by h[x] copies.

    The first copy of x keeps index x; further copies are appended in order of x
    and then copy number. Two copies are adjacent iff their originals are, so the
    copies of a looped vertex form a looped clique.
    """
    if len(h) != g.n:
        raise InvalidParameter(f"multiplicity vector has length {len(h)}, expected {g.n}")
    if any(k < 1 for k in h):
        raise InvalidParameter("multiplicities must be positive")
    copies: List[List[int]] = [[x] for x in range(g.n)]
    nxt = g.n
    for x in range(g.n):
        for _ in range(h[x] - 1):
            copies[x].append(nxt)
            nxt += 1
    pairs = {(a, b) for u, v in g.edges for a in copies[u] for b in copies[v]}
    return Graph(g.directed, nxt, frozenset(pairs))


def duplicate_vertex(g: Graph, x: int) -> Graph:
    """Add vertex ``g.n`` with exactly the open neighbourhood of x."""
    _check_vertex(g, x)
    h = [1] * g.n
    h[x] = 2
    return vertex_multiplication(g, h)
