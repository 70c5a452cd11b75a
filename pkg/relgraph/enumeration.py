"""Small universes of graphs and the order-theoretic checks run over them.

A universe holds one representative per isomorphism class, built by adding
a vertex to every smaller representative in all possible ways and keeping
the first graph seen with each certificate. Gaps and dualities computed
inside a universe are relative to it: a pair with nothing strictly between
in the universe may still be separated by a larger graph.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .config import setting
from .cores import cocore, is_point_determining
from .errors import InvalidParameter, PreconditionError, UnsupportedInput
from .families import generate
from .graph import Graph, complement, disjoint_union, induced_subgraph, vertex_multiplication
from .homomorphisms import HomConstraint, find_hom
from .isomorphism import certificate, is_isomorphic, is_vertex_transitive
from .oracles import MAX_RELATION_PAIRS, pr_core
from .schemas import DualityReport, GapPair, GapReport, GraphPayload, PrCoreReport
from .search import relation_exists
from .tracker import UniverseCache
from .workers import run_cells

logger = logging.getLogger(__name__)


class RelationOrder(str, Enum):
    """Orders given by relation existence rather than homomorphisms."""

    RELATION = "relation"
    FULL_DOMAIN = "full-domain-relation"


Comparator = Union[HomConstraint, RelationOrder]


def parse_comparator(name: str) -> Comparator:
    key = name.strip().lower()
    if key in ("rel", "relation", "pr"):
        return RelationOrder.RELATION
    if key in ("fulrel", "full-domain", "full-domain-relation", "r"):
        return RelationOrder.FULL_DOMAIN
    return HomConstraint.parse(key)


def compare(g: Graph, h: Graph, comparator: Comparator, *, max_nodes: Optional[int] = None) -> bool:
    """Whether ``g <= h`` in the chosen order."""
    if isinstance(comparator, RelationOrder):
        return relation_exists(g, h, comparator is RelationOrder.FULL_DOMAIN, max_nodes=max_nodes)
    return find_hom(g, h, comparator, max_nodes=max_nodes) is not None


# universes


@dataclass(frozen=True)
class UniverseSpec:
    directed: bool = False
    loops: bool = False
    max_n: int = 4
    min_n: int = 1

    @property
    def key(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"{kind}-{'loops' if self.loops else 'loopfree'}-{self.min_n}-{self.max_n}"


@dataclass(frozen=True)
class Universe:
    spec: UniverseSpec
    graphs: Tuple[Graph, ...]

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def of_order(self, n: int) -> List[Graph]:
        return [g for g in self.graphs if g.n == n]

    def counts(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for g in self.graphs:
            out[g.n] = out.get(g.n, 0) + 1
        return out

    def index_of(self, g: Graph) -> int:
        cert = certificate(g)
        for i, x in enumerate(self.graphs):
            if certificate(x) == cert:
                return i
        raise InvalidParameter(f"{g} is not in universe {self.spec.key}")


def _extensions(g: Graph, spec: UniverseSpec) -> Iterable[Graph]:
    v = g.n
    loop_options = (False, True) if spec.loops else (False,)
    if spec.directed:
        choices = product(range(4), repeat=v)
    else:
        choices = product(range(2), repeat=v)
    for choice in choices:
        new = set()
        for u, c in enumerate(choice):
            if c & 1:
                new.add((v, u))
            if c & 2:
                new.add((u, v))
        for loop in loop_options:
            edges = set(new)
            if loop:
                edges.add((v, v))
            yield Graph.from_edges(v + 1, list(g.edges | edges), directed=spec.directed)


def _level(previous: List[Graph], spec: UniverseSpec) -> List[Graph]:
    seen: Dict[tuple, Graph] = {}
    for g in previous:
        for ext in _extensions(g, spec):
            seen.setdefault(certificate(ext), ext)
    return [seen[c] for c in sorted(seen, key=lambda c: (len(seen[c].edges), c))]


def enumerate_universe(spec: UniverseSpec, cache: Optional[UniverseCache] = None) -> Universe:
    """All graphs with ``min_n..max_n`` vertices up to isomorphism, ordered by size then edges."""
    limit = setting("enumeration", "max_n_directed" if spec.directed else "max_n_undirected")
    if spec.max_n > limit:
        raise InvalidParameter(f"universe size {spec.max_n} exceeds the configured limit {limit}")
    if spec.min_n < 0 or spec.min_n > spec.max_n:
        raise InvalidParameter(f"bad vertex range {spec.min_n}..{spec.max_n}")
    if cache is None and setting("enumeration", "cache_file"):
        cache = UniverseCache(setting("enumeration", "cache_file"))
    if cache is not None:
        cached = cache.get(spec.key, spec.directed)
        if cached is not None:
            logger.info("universe %s loaded from cache (%d graphs)", spec.key, len(cached))
            return Universe(spec, tuple(cached))

    level = [Graph.empty(0, spec.directed)]
    graphs: List[Graph] = list(level) if spec.min_n == 0 else []
    for n in range(1, spec.max_n + 1):
        level = _level(level, spec)
        logger.debug("level %d: %d representatives", n, len(level))
        if n >= spec.min_n:
            graphs.extend(level)
    logger.info("universe %s: %d graphs", spec.key, len(graphs))
    if cache is not None:
        cache.put(spec.key, graphs)
        cache.save()
    return Universe(spec, tuple(graphs))


def comparison_matrix(u: Universe, comparator: Comparator, *, max_nodes: Optional[int] = None,
                      threads: Optional[int] = None) -> List[List[bool]]:
    n = len(u)
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    found = run_cells(lambda c: compare(u.graphs[c[0]], u.graphs[c[1]], comparator, max_nodes=max_nodes),
                      cells, threads)
    le = [[i == j for j in range(n)] for i in range(n)]
    for (i, j), ok in zip(cells, found):
        le[i][j] = ok
    return le


def _classes(le: List[List[bool]]) -> List[int]:
    """Representative (least index) of each element's equivalence class."""
    return [next(j for j in range(len(le)) if le[i][j] and le[j][i]) for i in range(len(le))]


def _label(comparator: Comparator) -> str:
    return comparator.value


def find_gaps(u: Universe, comparator: Comparator, *, max_nodes: Optional[int] = None,
              threads: Optional[int] = None) -> GapReport:
    """Covering pairs of the quotient order on the universe; each reported once per class pair."""
    le = comparison_matrix(u, comparator, max_nodes=max_nodes, threads=threads)
    rep = _classes(le)
    reps = sorted(set(rep))
    below = {(a, b) for a in reps for b in reps if a != b and le[a][b] and not le[b][a]}
    gaps = []
    for a, b in sorted(below):
        if not any((a, c) in below and (c, b) in below for c in reps):
            gaps.append(GapPair(lower=GraphPayload.from_graph(u.graphs[a]),
                                upper=GraphPayload.from_graph(u.graphs[b])))
    logger.info("%d classes, %d universe gaps under %s", len(reps), len(gaps), _label(comparator))
    return GapReport(comparator=_label(comparator), universe=u.spec.key, classes=len(reps), gaps=gaps)


# dualities


@dataclass(frozen=True)
class DualityPair:
    f_side: Tuple[Graph, ...]
    d_side: Tuple[Graph, ...]
    comparator: Comparator = HomConstraint.PLAIN


def _minimal(graphs: Sequence[Graph], comparator: Comparator, max_nodes: Optional[int]) -> List[Graph]:
    keep = []
    for i, g in enumerate(graphs):
        if not any(j != i and compare(f, g, comparator, max_nodes=max_nodes)
                   and not compare(g, f, comparator, max_nodes=max_nodes)
                   for j, f in enumerate(graphs)):
            keep.append(g)
    return keep


def _d_side(d_set: Iterable[Graph]) -> Tuple[Graph, ...]:
    d_side = tuple(d_set)
    if not d_side:
        raise InvalidParameter("the D side of a duality must not be empty")
    if any(d.directed for d in d_side):
        raise UnsupportedInput("duality constructions are run on undirected universes")
    return d_side


def duality_for_embeddings(d_set: Iterable[Graph], *, monomorphism: bool = False, loops: bool = False,
                           max_nodes: Optional[int] = None) -> DualityPair:
    """F: minimal graphs on at most n + 1 vertices below no member of D."""
    d_side = _d_side(d_set)
    comparator = HomConstraint.MONO if monomorphism else HomConstraint.EMBEDDING
    n = max(d.n for d in d_side)
    candidates = enumerate_universe(UniverseSpec(loops=loops, max_n=n + 1)).graphs
    outside = [f for f in candidates if not any(compare(f, d, comparator, max_nodes=max_nodes) for d in d_side)]
    f_side = tuple(_minimal(outside, comparator, max_nodes))
    logger.info("%s duality: %d candidates outside D, %d minimal", comparator.value, len(outside), len(f_side))
    return DualityPair(f_side, d_side, comparator)


def duality_for_full_homs(d_set: Iterable[Graph], *, max_nodes: Optional[int] = None) -> DualityPair:
    """F: minimal point-determining graphs below no member of D, up to n + 1 + C(n + 1, 2) vertices."""
    d_side = _d_side(d_set)
    for d in d_side:
        if not is_point_determining(d):
            raise PreconditionError(f"{d} is not point-determining", d)
    n = max(d.n for d in d_side)
    bound = min(n + 1 + comb(n + 1, 2), setting("duality", "max_vertices", 6))
    comparator = HomConstraint.FULL
    candidates = [g for g in enumerate_universe(UniverseSpec(max_n=bound)).graphs if is_point_determining(g)]
    outside = [f for f in candidates if not any(compare(f, d, comparator, max_nodes=max_nodes) for d in d_side)]
    f_side = tuple(_minimal(outside, comparator, max_nodes))
    logger.info("full duality up to %d vertices: %d F-cores outside D, %d minimal", bound, len(outside), len(f_side))
    return DualityPair(f_side, d_side, comparator)


def verify_duality(pair: DualityPair, u: Universe, *, max_nodes: Optional[int] = None,
                   threads: Optional[int] = None) -> DualityReport:
    """Each graph must lie above some F-member or below some D-member, not both."""

    def violates(g: Graph) -> bool:
        above = any(compare(f, g, pair.comparator, max_nodes=max_nodes) for f in pair.f_side)
        below = any(compare(g, d, pair.comparator, max_nodes=max_nodes) for d in pair.d_side)
        return above == below

    flags = run_cells(violates, u.graphs, threads)
    violations = [GraphPayload.from_graph(g) for g, bad in zip(u.graphs, flags) if bad]
    if violations:
        logger.warning("duality fails on %d of %d graphs", len(violations), len(u))
    return DualityReport(
        comparator=_label(pair.comparator),
        universe=u.spec.key,
        f_side=[GraphPayload.from_graph(g) for g in pair.f_side],
        d_side=[GraphPayload.from_graph(g) for g in pair.d_side],
        checked=len(u),
        violations=violations,
    )


def right_realizations(pair: DualityPair) -> List[Graph]:
    """F-members on n + 1 vertices whose every one-vertex deletion is the single D-member."""
    if len(pair.d_side) != 1:
        raise InvalidParameter("right realisations are defined for a single D-member")
    d = pair.d_side[0]
    out = []
    for f in pair.f_side:
        if f.n != d.n + 1:
            continue
        if all(is_isomorphic(induced_subgraph(f, [v for v in range(f.n) if v != x]), d) for x in range(f.n)):
            out.append(f)
    return out


def realization_matches_transitivity(pair: DualityPair) -> bool:
    """Every right realisation is vertex transitive."""
    return all(is_vertex_transitive(f) for f in right_realizations(pair))


# reductions


def reduce_hom_to_fulrel(g: Graph, h: Graph) -> Graph:
    """g ⊕ h: a homomorphism g -> h exists iff a full-domain relation (g ⊕ h) -> h does."""
    if g.directed != h.directed:
        raise InvalidParameter("reduction inputs must agree on directedness")
    return disjoint_union(g, h)


def reduce_fulrel_to_surhom(g: Graph, h: Graph) -> Graph:
    """g with every vertex taken |V_h| times: a full-domain relation g -> h exists
    iff a surjective homomorphism from the blown-up graph onto h does."""
    if g.directed != h.directed:
        raise InvalidParameter("reduction inputs must agree on directedness")
    return vertex_multiplication(g, [max(h.n, 1)] * g.n)


# relation cores


def complement_cycle(n: int) -> Graph:
    return complement(generate("cycle", n), simple=True)


def pr_core_checks(u: Universe, sizes: Sequence[int] = (4, 5, 6), *, max_nodes: Optional[int] = None,
                   threads: Optional[int] = None) -> PrCoreReport:
    """Minimum partial-domain representative against the cocore, plus the complement-of-cycle antichain."""
    if u.spec.directed:
        raise UnsupportedInput("relation cores are checked on undirected universes")
    if u.spec.max_n * (u.spec.max_n - 1) > MAX_RELATION_PAIRS:
        raise InvalidParameter(f"brute-force representatives need max_n <= 4, got {u.spec.max_n}")
    candidates = list(u.graphs)

    def mismatch(g: Graph) -> bool:
        return not is_isomorphic(pr_core(g, candidates), cocore(g))

    flags = run_cells(mismatch, u.graphs, threads)
    mismatches = [GraphPayload.from_graph(g) for g, bad in zip(u.graphs, flags) if bad]
    antichain = []
    for n in sizes:
        for m in sizes:
            found = relation_exists(complement_cycle(n), complement_cycle(m), True, max_nodes=max_nodes)
            antichain.append((n, m, found))
    report = PrCoreReport(checked=len(u), mismatches=mismatches, antichain=antichain)
    logger.info("pr-core checks over %s: %s", u.spec.key, "ok" if report.ok else "FAILED")
    return report
