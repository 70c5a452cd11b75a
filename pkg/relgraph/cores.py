"""Point-determining quotients, relational equivalences and the reduced forms they induce.

The R-core is the smallest graph reachable from g and back by full-domain
relations; the cocore is the smallest induced subgraph with a coretraction
onto g, which is also the smallest graph reachable both ways by relations
with arbitrary domain. The graph core is the classical homomorphism core.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import InvariantViolation, PreconditionError, SearchBudgetExhausted, UnsupportedInput
from .graph import Graph, Partition, induced_subgraph, quotient
from .homomorphisms import find_hom, shrinking_vertex
from .isomorphism import is_isomorphic
from .relations import Relation, apply_strong, transpose
from .search import find_relation, iter_relations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PdQuotient:
    quotient: Graph
    classes: Partition
    membership: Relation

    def reconstruct(self) -> Graph:
        return apply_strong(self.quotient, transpose(self.membership))


def _signature(g: Graph, v: int):
    return (g.out_nbrs[v], g.in_nbrs[v]) if g.directed else g.out_nbrs[v]


def pd_quotient(g: Graph) -> PdQuotient:
    """Collapse vertices with equal neighbourhoods (in and out for digraphs).

    Classes are numbered by their least vertex.
    """
    groups: Dict[object, List[int]] = {}
    for v in range(g.n):
        groups.setdefault(_signature(g, v), []).append(v)
    classes = Partition(tuple(sorted((frozenset(b) for b in groups.values()), key=min)))
    membership = Relation.of(g.n, len(classes), classes.block_of.items())
    return PdQuotient(quotient(g, classes), classes, membership)


def is_point_determining(g: Graph) -> bool:
    return len({_signature(g, v) for v in range(g.n)}) == g.n


def nucleus_vertex(g: Graph) -> Optional[int]:
    """A vertex whose deletion leaves a point-determining graph point-determining."""
    if not is_point_determining(g):
        raise PreconditionError("nucleus vertices are defined for point-determining graphs")
    for x in range(g.n):
        if is_point_determining(induced_subgraph(g, [v for v in range(g.n) if v != x])):
            return x
    return None


def strongly_equivalent(g: Graph, h: Graph) -> bool:
    return is_isomorphic(pd_quotient(g).quotient, pd_quotient(h).quotient)


def _require_undirected(g: Graph) -> None:
    if g.directed:
        raise UnsupportedInput("relational cores are computed for undirected graphs")


def _reduce(g: Graph, need_dominator: bool) -> List[int]:
    """Vertices kept by the neighbourhood-union deletion rule, iterated to a fixpoint.

    ``need_dominator`` adds the extra requirement that some other vertex's
    neighbourhood contains N(v).
    """
    isolated = [v for v in range(g.n) if not g.out_nbrs[v]]
    alive = set(range(g.n)) - set(isolated)
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            nv = g.out_nbrs[v] & alive
            if not nv:
                continue
            covered = set()
            for j in alive:
                nj = g.out_nbrs[j] & alive
                if j != v and nj <= nv:
                    covered |= nj
            if covered != nv:
                continue
            if need_dominator and not any(u != v and nv <= (g.out_nbrs[u] & alive) for u in alive):
                continue
            alive.discard(v)
            changed = True
            logger.debug("deleted vertex %d (dominator required: %s)", v, need_dominator)
            break
    kept = sorted(alive)
    if isolated:
        kept = sorted(kept + [isolated[0]])
    return kept


def r_core_vertices(g: Graph) -> List[int]:
    _require_undirected(g)
    return _reduce(g, need_dominator=True)


def r_core(g: Graph) -> Graph:
    return induced_subgraph(g, r_core_vertices(g))


def is_r_core(g: Graph) -> bool:
    return len(r_core_vertices(g)) == g.n


def weakly_equivalent(g: Graph, h: Graph) -> bool:
    return is_isomorphic(r_core(g), r_core(h))


def cocore_vertices(g: Graph) -> List[int]:
    _require_undirected(g)
    return _reduce(g, need_dominator=False)


def cocore(g: Graph) -> Graph:
    return induced_subgraph(g, cocore_vertices(g))


def is_cocore(g: Graph) -> bool:
    return len(cocore_vertices(g)) == g.n


def has_property_N(g: Graph) -> bool:
    _require_undirected(g)
    return not any(x != y and g.out_nbrs[x] <= g.out_nbrs[y] for x in range(g.n) for y in range(g.n))


def has_property_Nstar(g: Graph) -> bool:
    """No N(x) is the union of the neighbourhoods of a non-empty set of other vertices."""
    _require_undirected(g)
    for x in range(g.n):
        below = [y for y in range(g.n) if y != x and g.out_nbrs[y] <= g.out_nbrs[x]]
        if below and frozenset().union(*(g.out_nbrs[y] for y in below)) == g.out_nbrs[x]:
            return False
    return True


def minimal_basis(g: Graph) -> FrozenSet[int]:
    if not is_point_determining(g):
        raise PreconditionError("minimal basis needs a point-determining graph")
    return frozenset(cocore_vertices(g))


def _renumbering(keep: Sequence[int]) -> Dict[int, int]:
    return {v: i for i, v in enumerate(sorted(keep))}


def find_retraction(g: Graph, keep: Sequence[int], **kwargs) -> Optional[Relation]:
    """Full-domain R with g * R = g[keep] and (x, x) ∈ R on ``keep`` (targets renumbered)."""
    index = _renumbering(keep)
    return find_relation(g, induced_subgraph(g, keep), True, required=[(v, i) for v, i in index.items()], **kwargs)


def find_coretraction(g: Graph, keep: Sequence[int], **kwargs) -> Optional[Relation]:
    """R with g[keep] * R = g and (x, x) ∈ R on ``keep`` (sources renumbered)."""
    index = _renumbering(keep)
    return find_relation(induced_subgraph(g, keep), g, False, required=[(i, v) for v, i in index.items()], **kwargs)


@dataclass(frozen=True)
class CocoreWitness:
    cocore: Graph
    vertices: Tuple[int, ...]
    coretraction: Relation


def cocore_witness(g: Graph, **kwargs) -> CocoreWitness:
    keep = cocore_vertices(g)
    rel = find_coretraction(g, keep, **kwargs)
    if rel is None:
        raise InvariantViolation(f"no coretraction from the computed cocore {keep}")
    return CocoreWitness(induced_subgraph(g, keep), tuple(keep), rel)


def graph_core_vertices(g: Graph, *, max_nodes: Optional[int] = None) -> List[int]:
    """Delete a vertex v while g still maps to g - v; what remains is the core."""
    if g.loops:
        return [min(g.loops)]
    alive = list(range(g.n))
    current = g
    while True:
        v = shrinking_vertex(current, max_nodes=max_nodes)
        if v is None:
            return alive
        del alive[v]
        current = induced_subgraph(g, alive)


def graph_core(g: Graph, *, max_nodes: Optional[int] = None) -> Graph:
    return induced_subgraph(g, graph_core_vertices(g, max_nodes=max_nodes))


def retraction_to_core(g: Graph, *, max_nodes: Optional[int] = None) -> Dict[int, int]:
    """A homomorphism g -> g fixing the core vertices pointwise, with image the core."""
    keep = graph_core_vertices(g, max_nodes=max_nodes)
    core = induced_subgraph(g, keep)
    pinned = {v: i for i, v in enumerate(keep)}
    f = find_hom(g, core, pinned=pinned, max_nodes=max_nodes)
    if f is None:
        raise InvariantViolation("the core found by vertex deletion admits no retraction")
    return {v: keep[b] for v, b in f.items()}


def self_relations_automorphic_oracle(g: Graph, **kwargs) -> bool:
    """Whether every R with g * R = g is induced by an automorphism (exhaustive)."""
    for rel in iter_relations(g, g, False, **kwargs):
        f = rel.as_mapping()
        if f is None or len(set(f.values())) != g.n:
            return False
    return True


def all_self_relations_automorphic(g: Graph, check_oracle: bool = False, **kwargs) -> bool:
    """Property N decides it; ``check_oracle`` also runs the exhaustive search and compares."""
    verdict = has_property_N(g)
    if check_oracle:
        try:
            oracle = self_relations_automorphic_oracle(g, **kwargs)
        except SearchBudgetExhausted as exc:
            logger.warning("self-relation oracle gave up after %d nodes; returning criterion", exc.nodes)
            return verdict
        if oracle != verdict:
            raise InvariantViolation(f"property N says {verdict}, relation enumeration says {oracle}")
    return verdict


@dataclass(frozen=True)
class RelationExtremes:
    minimal: Tuple[Relation, ...]
    maximal: Tuple[Relation, ...]
    count: int


def rel_extremes(g: Graph, h: Graph, **kwargs) -> RelationExtremes:
    solutions = list(iter_relations(g, h, False, **kwargs))
    minimal = [r for r in solutions if not any(s < r for s in solutions)]
    maximal = [r for r in solutions if not any(r < s for s in solutions)]
    key = lambda r: sorted(r.pairs)
    return RelationExtremes(tuple(sorted(minimal, key=key)), tuple(sorted(maximal, key=key)), len(solutions))


def full_domain_equivalent(g: Graph, h: Graph, **kwargs) -> bool:
    """Relations with full domain both ways (the class an R-core minimises)."""
    return (find_relation(g, h, True, **kwargs) is not None
            and find_relation(h, g, True, **kwargs) is not None)


def partial_domain_equivalent(g: Graph, h: Graph, **kwargs) -> bool:
    """Relations with any domain both ways (the class a cocore minimises)."""
    return (find_relation(g, h, False, **kwargs) is not None
            and find_relation(h, g, False, **kwargs) is not None)
