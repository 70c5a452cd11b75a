"""One backtracking engine for every homomorphism variant.

Domains are bitmasks over the target's vertices. The engine picks the
variable with fewest candidates (ties: higher degree, then a seeded random
priority), forward-checks the variant's side conditions, keeps the edge
constraints arc consistent and, when only local conditions are active,
solves independent parts of the unassigned subgraph separately.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence

from .config import setting
from .errors import InvalidParameter, SearchBudgetExhausted, UnsupportedInput
from .families import generate, line_graph
from .graph import Graph, induced_subgraph

logger = logging.getLogger(__name__)


class Condition(str, Enum):
    INJECTIVE = "injective"
    FULL = "full"
    VERTEX_SURJECTIVE = "vertex-surjective"
    EDGE_SURJECTIVE = "edge-surjective"
    LOCALLY_INJECTIVE = "locally-injective"
    LOCALLY_SURJECTIVE = "locally-surjective"


class HomConstraint(str, Enum):
    PLAIN = "plain"
    MONO = "mono"
    EMBEDDING = "embedding"
    FULL = "full"
    VERTEX_SURJECTIVE = "vertex-surjective"
    EDGE_SURJECTIVE = "edge-surjective"
    SURJECTIVE = "surjective"
    LOCALLY_INJECTIVE = "locally-injective"
    LOCALLY_SURJECTIVE = "locally-surjective"
    LOCALLY_BIJECTIVE = "locally-bijective"

    @property
    def conditions(self) -> FrozenSet[Condition]:
        return _CONDITIONS[self]

    @property
    def local(self) -> bool:
        return bool(self.conditions & _LOCAL)

    @classmethod
    def parse(cls, name: str) -> "HomConstraint":
        key = name.strip().lower().replace("_", "-")
        if key in _ALIASES:
            return _ALIASES[key]
        try:
            return cls(key)
        except ValueError:
            raise InvalidParameter(f"unknown homomorphism constraint {name!r}") from None


_CONDITIONS = {
    HomConstraint.PLAIN: frozenset(),
    HomConstraint.MONO: frozenset({Condition.INJECTIVE}),
    HomConstraint.FULL: frozenset({Condition.FULL}),
    HomConstraint.VERTEX_SURJECTIVE: frozenset({Condition.VERTEX_SURJECTIVE}),
    HomConstraint.EDGE_SURJECTIVE: frozenset({Condition.EDGE_SURJECTIVE}),
    HomConstraint.LOCALLY_INJECTIVE: frozenset({Condition.LOCALLY_INJECTIVE}),
    HomConstraint.LOCALLY_SURJECTIVE: frozenset({Condition.LOCALLY_SURJECTIVE}),
}
_CONDITIONS[HomConstraint.EMBEDDING] = _CONDITIONS[HomConstraint.MONO] | _CONDITIONS[HomConstraint.FULL]
_CONDITIONS[HomConstraint.SURJECTIVE] = (
    _CONDITIONS[HomConstraint.VERTEX_SURJECTIVE] | _CONDITIONS[HomConstraint.EDGE_SURJECTIVE]
)
_CONDITIONS[HomConstraint.LOCALLY_BIJECTIVE] = (
    _CONDITIONS[HomConstraint.LOCALLY_INJECTIVE] | _CONDITIONS[HomConstraint.LOCALLY_SURJECTIVE]
)

_LOCAL = frozenset({Condition.LOCALLY_INJECTIVE, Condition.LOCALLY_SURJECTIVE})
_GLOBAL = frozenset({Condition.INJECTIVE, Condition.FULL, Condition.VERTEX_SURJECTIVE, Condition.EDGE_SURJECTIVE})

_ALIASES = {
    "hom": HomConstraint.PLAIN,
    "m": HomConstraint.MONO,
    "monomorphism": HomConstraint.MONO,
    "e": HomConstraint.EMBEDDING,
    "f": HomConstraint.FULL,
    "vs": HomConstraint.VERTEX_SURJECTIVE,
    "es": HomConstraint.EDGE_SURJECTIVE,
    "s": HomConstraint.SURJECTIVE,
    "li": HomConstraint.LOCALLY_INJECTIVE,
    "ls": HomConstraint.LOCALLY_SURJECTIVE,
    "lb": HomConstraint.LOCALLY_BIJECTIVE,
}


# verifier


def _injective(f, g, h):
    return len(set(f.values())) == g.n


def _full(f, g, h):
    return all(((f[u], f[v]) in h.edges) <= ((u, v) in g.edges) for u in range(g.n) for v in range(g.n))


def _vertex_surjective(f, g, h):
    return set(f.values()) == set(range(h.n))


def _edge_surjective(f, g, h):
    return {(f[u], f[v]) for u, v in g.edges} == set(h.edges)


def _locally_injective(f, g, h):
    return all(len({f[u] for u in g.out_nbrs[v]}) == len(g.out_nbrs[v]) for v in range(g.n))


def _locally_surjective(f, g, h):
    return all({f[u] for u in g.out_nbrs[v]} >= h.out_nbrs[f[v]] for v in range(g.n))


_CHECKS = {
    Condition.INJECTIVE: _injective,
    Condition.FULL: _full,
    Condition.VERTEX_SURJECTIVE: _vertex_surjective,
    Condition.EDGE_SURJECTIVE: _edge_surjective,
    Condition.LOCALLY_INJECTIVE: _locally_injective,
    Condition.LOCALLY_SURJECTIVE: _locally_surjective,
}


def check_hom(f: Mapping[int, int], g: Graph, h: Graph, c: HomConstraint = HomConstraint.PLAIN) -> bool:
    if g.directed != h.directed:
        return False
    if set(f) != set(range(g.n)) or any(not 0 <= b < h.n for b in f.values()):
        return False
    if any((f[u], f[v]) not in h.edges for u, v in g.edges):
        return False
    return all(_CHECKS[cond](f, g, h) for cond in c.conditions)


# search engine


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class HomSearch:
    """Backtracking search for homomorphisms ``g -> h`` of one variant.

    ``first()`` returns a witness or None (definitive absence); exceeding
    ``max_nodes`` raises SearchBudgetExhausted. ``solutions()`` enumerates
    every witness.
    """

    def __init__(
        self,
        g: Graph,
        h: Graph,
        constraint: HomConstraint = HomConstraint.PLAIN,
        *,
        max_nodes: Optional[int] = None,
        seed: Optional[int] = None,
        pinned: Optional[Mapping[int, int]] = None,
    ):
        if g.directed != h.directed:
            raise InvalidParameter("source and target must both be graphs or both be digraphs")
        constraint = HomConstraint(constraint)
        if constraint.local and g.directed:
            raise UnsupportedInput(f"{constraint.value} homomorphisms are defined for undirected graphs")
        self.g = g
        self.h = h
        self.constraint = constraint
        self.conds = constraint.conditions
        self.max_nodes = setting("search", "max_nodes") if max_nodes is None else max_nodes
        self.pinned = dict(pinned or {})
        for v, b in self.pinned.items():
            if not (0 <= v < g.n and 0 <= b < h.n):
                raise InvalidParameter(f"pinned pair {v} -> {b} out of range")
        self.nodes = 0
        rng = random.Random(setting("search", "seed", 0) if seed is None else seed)
        self._priority = list(range(g.n))
        rng.shuffle(self._priority)
        self._adj = [g.out_nbrs[v] | g.in_nbrs[v] for v in range(g.n)]
        self._degree = [len(a) for a in self._adj]
        self._all_h = (1 << h.n) - 1
        self._out_cache: Dict[int, int] = {}
        self._in_cache: Dict[int, int] = {}
        self._split = not (self.conds & _GLOBAL)
        if self.conds & _LOCAL:
            self._links = [
                frozenset(w for u in self._adj[v] for w in self._adj[u] | {u}) - {v} for v in range(g.n)
            ]
        else:
            self._links = [a - {v} for v, a in enumerate(self._adj)]

    # public API

    def first(self) -> Optional[Dict[int, int]]:
        return next(self._run(split=self._split), None)

    def solutions(self) -> Iterator[Dict[int, int]]:
        return self._run(split=False)

    # internals

    def _tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            logger.warning("%s search %d->%d vertices hit the budget of %d nodes",
                           self.constraint.value, self.g.n, self.h.n, self.max_nodes)
            raise SearchBudgetExhausted(f"homomorphism search exceeded {self.max_nodes} nodes", self.nodes)

    def _trivially_absent(self) -> bool:
        g, h = self.g, self.h
        if g.n > 0 and h.n == 0:
            return True
        if Condition.INJECTIVE in self.conds and g.n > h.n:
            return True
        if Condition.VERTEX_SURJECTIVE in self.conds and g.n < h.n:
            return True
        if Condition.EDGE_SURJECTIVE in self.conds and len(g.edges) < len(h.edges):
            return True
        return False

    def _initial_domains(self) -> Optional[List[int]]:
        g, h = self.g, self.h
        with_loop = sum(1 << b for b in h.loops)
        h_deg = [len(h.out_nbrs[b]) for b in range(h.n)]
        doms = []
        for v in range(g.n):
            d = self._all_h
            if g.has_loop(v):
                d &= with_loop
            elif Condition.FULL in self.conds:
                d &= ~with_loop
            if Condition.LOCALLY_INJECTIVE in self.conds:
                d &= sum(1 << b for b in range(h.n) if h_deg[b] >= g.degree(v))
            if Condition.LOCALLY_SURJECTIVE in self.conds:
                d &= sum(1 << b for b in range(h.n) if h_deg[b] <= g.degree(v))
            if not d:
                return None
            doms.append(d)
        return doms

    def _union(self, masks: Sequence[int], cache: Dict[int, int], d: int) -> int:
        acc = cache.get(d)
        if acc is None:
            acc = 0
            for b in _bits(d):
                acc |= masks[b]
            cache[d] = acc
        return acc

    def _propagate(self, doms: List[int], queue: set, free: FrozenSet[int]) -> bool:
        g, h = self.g, self.h
        while queue:
            u = queue.pop()
            du = doms[u]
            sup_out = self._union(h.out_masks, self._out_cache, du)
            for w in g.out_nbrs[u]:
                if w in free and w != u:
                    nd = doms[w] & sup_out
                    if nd != doms[w]:
                        if not nd:
                            return False
                        doms[w] = nd
                        queue.add(w)
            if g.directed:
                sup_in = self._union(h.in_masks, self._in_cache, du)
                for w in g.in_nbrs[u]:
                    if w in free and w != u:
                        nd = doms[w] & sup_in
                        if nd != doms[w]:
                            if not nd:
                                return False
                            doms[w] = nd
                            queue.add(w)
        return True

    def _assign(self, var: int, val: int, doms: List[int], free: FrozenSet[int]) -> Optional[List[int]]:
        g, h = self.g, self.h
        doms = list(doms)
        bit = 1 << val
        doms[var] = bit
        touched = set()
        for w in g.out_nbrs[var]:
            if w in free:
                doms[w] &= h.out_masks[val]
                touched.add(w)
        for w in g.in_nbrs[var]:
            if w in free:
                doms[w] &= h.in_masks[val]
                touched.add(w)
        if Condition.FULL in self.conds:
            for w in free:
                if (var, w) not in g.edges:
                    doms[w] &= ~h.out_masks[val]
                if (w, var) not in g.edges:
                    doms[w] &= ~h.in_masks[val]
                touched.add(w)
        if Condition.INJECTIVE in self.conds:
            for w in free:
                doms[w] &= ~bit
                touched.add(w)
        if Condition.LOCALLY_INJECTIVE in self.conds:
            for w in g.out_nbrs[var]:
                for x in g.out_nbrs[w]:
                    if x != var and x in free:
                        doms[x] &= ~bit
                        touched.add(x)
        if any(doms[w] == 0 for w in touched):
            return None
        if Condition.LOCALLY_SURJECTIVE in self.conds:
            for w in g.out_nbrs[var] | {var}:
                if w not in free and not self._local_cover_possible(w, doms, free):
                    return None
        if Condition.VERTEX_SURJECTIVE in self.conds and not self._vertex_cover_possible(doms, free):
            return None
        if Condition.EDGE_SURJECTIVE in self.conds and not self._edge_cover_possible(doms, free):
            return None
        if not self._propagate(doms, {var} | touched, free):
            return None
        return doms

    def _local_cover_possible(self, w: int, doms: List[int], free: FrozenSet[int]) -> bool:
        image = doms[w].bit_length() - 1
        covered = 0
        pending = 0
        open_slots = 0
        for x in self.g.out_nbrs[w]:
            if x in free:
                pending |= doms[x]
                open_slots += 1
            else:
                covered |= doms[x]
        missing = self.h.out_masks[image] & ~covered
        return missing.bit_count() <= open_slots and not missing & ~pending

    def _vertex_cover_possible(self, doms: List[int], free: FrozenSet[int]) -> bool:
        covered = 0
        pending = 0
        for v in range(self.g.n):
            if v in free:
                pending |= doms[v]
            else:
                covered |= doms[v]
        missing = self._all_h & ~covered
        return missing.bit_count() <= len(free) and not missing & ~pending

    def _edge_cover_possible(self, doms: List[int], free: FrozenSet[int]) -> bool:
        covered = set()
        open_arcs = 0
        for u, v in self.g.edges:
            if u in free or v in free:
                open_arcs += 1
            else:
                covered.add((doms[u].bit_length() - 1, doms[v].bit_length() - 1))
        return len(self.h.edges) - len(covered) <= open_arcs

    def _choose(self, free: FrozenSet[int], doms: List[int]) -> int:
        return min(free, key=lambda v: (doms[v].bit_count(), -self._degree[v], self._priority[v]))

    def _parts(self, free: FrozenSet[int]) -> List[FrozenSet[int]]:
        parts = []
        unseen = set(free)
        while unseen:
            start = min(unseen)
            unseen.discard(start)
            part = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self._links[v]:
                    if w in unseen:
                        unseen.discard(w)
                        part.add(w)
                        stack.append(w)
            parts.append(frozenset(part))
        return sorted(parts, key=len)

    def _solve(self, free: FrozenSet[int], doms: List[int], split: bool) -> Iterator[Dict[int, int]]:
        if not free:
            yield {}
            return
        if split:
            parts = self._parts(free)
            if len(parts) > 1:
                merged: Dict[int, int] = {}
                for part in parts:
                    found = next(self._solve(part, doms, split), None)
                    if found is None:
                        return
                    merged.update(found)
                yield merged
                return
        var = self._choose(free, doms)
        rest = free - {var}
        for val in _bits(doms[var]):
            self._tick()
            narrowed = self._assign(var, val, doms, rest)
            if narrowed is None:
                continue
            for found in self._solve(rest, narrowed, split):
                found = dict(found)
                found[var] = val
                yield found

    def _run(self, split: bool) -> Iterator[Dict[int, int]]:
        if self._trivially_absent():
            return
        doms = self._initial_domains()
        if doms is None:
            return
        free = frozenset(range(self.g.n)) - set(self.pinned)
        for v, b in sorted(self.pinned.items()):
            if not doms[v] >> b & 1:
                return
            doms = self._assign(v, b, doms, free)
            if doms is None:
                return
        if not self._propagate(doms, set(free), free):
            return
        for found in self._solve(free, doms, split):
            mapping = dict(self.pinned)
            mapping.update(found)
            if check_hom(mapping, self.g, self.h, self.constraint):
                logger.debug("%s witness after %d nodes", self.constraint.value, self.nodes)
                yield dict(sorted(mapping.items()))


def find_hom(
    g: Graph,
    h: Graph,
    c: HomConstraint = HomConstraint.PLAIN,
    *,
    max_nodes: Optional[int] = None,
    seed: Optional[int] = None,
    pinned: Optional[Mapping[int, int]] = None,
) -> Optional[Dict[int, int]]:
    return HomSearch(g, h, c, max_nodes=max_nodes, seed=seed, pinned=pinned).first()


def hom_exists(g: Graph, h: Graph, c: HomConstraint = HomConstraint.PLAIN, **kwargs) -> bool:
    return find_hom(g, h, c, **kwargs) is not None


def _require_simple(g: Graph) -> None:
    if g.directed or g.loops:
        raise UnsupportedInput("colourings are defined for loop-free undirected graphs")


def chromatic_number(g: Graph, *, max_nodes: Optional[int] = None) -> int:
    """Least k with a homomorphism to K_k."""
    _require_simple(g)
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        if find_hom(g, generate("complete", k), max_nodes=max_nodes) is not None:
            return k
    return g.n


def chromatic_index(g: Graph, *, max_nodes: Optional[int] = None) -> int:
    _require_simple(g)
    return chromatic_number(line_graph(g).graph, max_nodes=max_nodes)


def vizing_class(g: Graph, *, max_nodes: Optional[int] = None) -> int:
    """1 when χ′ equals the maximum degree, otherwise 2."""
    return 1 if chromatic_index(g, max_nodes=max_nodes) == g.max_degree else 2


@dataclass(frozen=True)
class HomFactorization:
    image: Graph
    surjection: Dict[int, int]
    inclusion: Dict[int, int]


def factor_hom(f: Mapping[int, int], g: Graph, h: Graph) -> HomFactorization:
    """Split f into a surjective homomorphism onto its image and a monomorphism into h."""
    if not check_hom(f, g, h):
        raise InvalidParameter("mapping is not a homomorphism")
    used = sorted(set(f.values()))
    index = {b: i for i, b in enumerate(used)}
    image = Graph(g.directed, len(used), frozenset((index[f[u]], index[f[v]]) for u, v in g.edges))
    return HomFactorization(
        image=image,
        surjection={v: index[f[v]] for v in range(g.n)},
        inclusion={i: b for i, b in enumerate(used)},
    )


def shrinking_vertex(g: Graph, *, max_nodes: Optional[int] = None) -> Optional[int]:
    """A vertex v with a homomorphism g -> g - v, if any."""
    for v in range(g.n):
        rest = [u for u in range(g.n) if u != v]
        if find_hom(g, induced_subgraph(g, rest), max_nodes=max_nodes) is not None:
            return v
    return None


def is_core(g: Graph, *, max_nodes: Optional[int] = None) -> bool:
    """No retraction onto a proper subgraph, i.e. no endomorphism missing a vertex."""
    if g.loops:
        return g.n == 1
    return shrinking_vertex(g, max_nodes=max_nodes) is None
