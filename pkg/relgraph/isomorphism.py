"""Isomorphism testing, canonical certificates and automorphism helpers."""
from __future__ import annotations

import logging
from typing import Dict, Iterator, Optional, Tuple

import networkx as nx
from networkx.algorithms import isomorphism as nxiso

from .config import setting
from .errors import SearchBudgetExhausted
from .graph import Graph
from .refinement import color_classes, refine

logger = logging.getLogger(__name__)

Certificate = Tuple[bool, int, Tuple[Tuple[int, int], ...]]


class _BudgetMixin:
    """Counts VF2 feasibility checks and aborts past ``max_nodes``."""

    def _init_budget(self, max_nodes: Optional[int]) -> None:
        self.nodes = 0
        self.max_nodes = max_nodes

    def syntactic_feasibility(self, G1_node, G2_node):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise SearchBudgetExhausted(f"isomorphism search exceeded {self.max_nodes} nodes", self.nodes)
        return super().syntactic_feasibility(G1_node, G2_node)


class BudgetedGraphMatcher(_BudgetMixin, nxiso.GraphMatcher):
    def __init__(self, G1, G2, max_nodes: Optional[int] = None):
        super().__init__(G1, G2, node_match=nxiso.categorical_node_match(["loop", "pin"], [False, False]))
        self._init_budget(max_nodes)


class BudgetedDiGraphMatcher(_BudgetMixin, nxiso.DiGraphMatcher):
    def __init__(self, G1, G2, max_nodes: Optional[int] = None):
        super().__init__(G1, G2, node_match=nxiso.categorical_node_match(["loop", "pin"], [False, False]))
        self._init_budget(max_nodes)


def _matcher(g: Graph, h: Graph, max_nodes: Optional[int], pins: Optional[Tuple[int, int]] = None):
    left, right = g.to_networkx(), h.to_networkx()
    if pins is not None:
        left.nodes[pins[0]]["pin"] = True
        right.nodes[pins[1]]["pin"] = True
    cls = BudgetedDiGraphMatcher if g.directed else BudgetedGraphMatcher
    return cls(left, right, max_nodes)


def _invariants_differ(g: Graph, h: Graph) -> bool:
    if g.directed != h.directed or g.n != h.n or len(g.edges) != len(h.edges):
        return True
    if len(g.loops) != len(h.loops) or g.degree_sequence != h.degree_sequence:
        return True
    if g.n == 0:
        return False
    return nx.weisfeiler_lehman_graph_hash(g.to_networkx(), node_attr="loop") != nx.weisfeiler_lehman_graph_hash(
        h.to_networkx(), node_attr="loop"
    )


def find_isomorphism(g: Graph, h: Graph, max_nodes: Optional[int] = None) -> Optional[Dict[int, int]]:
    """A bijection g -> h preserving edges, non-edges and loops, or None."""
    if _invariants_differ(g, h):
        return None
    if max_nodes is None:
        max_nodes = setting("search", "max_nodes")
    matcher = _matcher(g, h, max_nodes)
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


def is_isomorphic(g: Graph, h: Graph, max_nodes: Optional[int] = None) -> bool:
    return find_isomorphism(g, h, max_nodes) is not None


def is_isomorphism(f: Dict[int, int], g: Graph, h: Graph) -> bool:
    if g.n != h.n or sorted(f) != list(range(g.n)) or sorted(f.values()) != list(range(h.n)):
        return False
    return {(f[u], f[v]) for u, v in g.edges} == set(h.edges)


def _code(g: Graph, colors) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((colors[u], colors[v]) for u, v in g.edges))


def _canonical_code(g: Graph, colors) -> Tuple[Tuple[int, int], ...]:
    colors = refine(g, colors)
    classes = color_classes(colors)
    if all(len(cell) == 1 for cell in classes):
        return _code(g, colors)
    cell = next(cell for cell in classes if len(cell) > 1)
    best = None
    for v in cell:
        split = [2 * c for c in colors]
        split[v] -= 1
        code = _canonical_code(g, split)
        if best is None or code < best:
            best = code
    return best


def certificate(g: Graph) -> Certificate:
    """Canonical form: equal certificates iff isomorphic graphs.

    Individualise-and-refine over the refinement cells, keeping the
    lexicographically least relabelled edge list.
    """
    return (g.directed, g.n, _canonical_code(g, None))


def automorphisms(g: Graph, max_nodes: Optional[int] = None) -> Iterator[Dict[int, int]]:
    matcher = _matcher(g, g, max_nodes)
    for mapping in matcher.isomorphisms_iter():
        yield dict(mapping)


def is_vertex_transitive(g: Graph, max_nodes: Optional[int] = None) -> bool:
    if g.n <= 1:
        return True
    colors = refine(g)
    if len(set(colors)) > 1:
        return False
    for v in range(1, g.n):
        if not _matcher(g, g, max_nodes, pins=(0, v)).is_isomorphic():
            return False
    return True
