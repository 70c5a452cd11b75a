"""Search for relations R with G * R = H.

Each target vertex b of H gets a preimage S_b ⊆ V_G, a bitmask. Two targets
a, b are consistent when G has an edge from S_a to S_b exactly when H has
the edge (a, b); a loop at b needs an edge inside S_b.
"""
from __future__ import annotations

import logging
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .config import setting
from .errors import InvalidParameter, SearchBudgetExhausted
from .graph import Graph
from .relations import Relation, apply_strong

logger = logging.getLogger(__name__)


class RelationSearch:
    def __init__(
        self,
        g: Graph,
        h: Graph,
        *,
        full_domain: bool = False,
        required: Iterable[Tuple[int, int]] = (),
        max_nodes: Optional[int] = None,
    ):
        if g.directed != h.directed:
            raise InvalidParameter("source and target must both be graphs or both be digraphs")
        limit = setting("relations", "max_source_vertices", 10)
        if g.n > limit:
            raise InvalidParameter(f"relation search handles at most {limit} source vertices, got {g.n}")
        self.g = g
        self.h = h
        self.full_domain = full_domain
        self.max_nodes = setting("search", "max_nodes") if max_nodes is None else max_nodes
        self.nodes = 0
        self._full = (1 << g.n) - 1
        self._reach = self._reach_table()
        need: Dict[int, int] = {}
        for x, b in required:
            if not (0 <= x < g.n and 0 <= b < h.n):
                raise InvalidParameter(f"required pair ({x}, {b}) out of range")
            need[b] = need.get(b, 0) | (1 << x)
        self._need = need

    def _reach_table(self) -> List[int]:
        reach = [0] * (1 << self.g.n)
        for s in range(1, 1 << self.g.n):
            low = s & -s
            reach[s] = reach[s ^ low] | self.g.out_masks[low.bit_length() - 1]
        return reach

    def _tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise SearchBudgetExhausted(f"relation search exceeded {self.max_nodes} nodes", self.nodes)

    def _initial(self) -> List[List[int]]:
        doms = []
        for b in range(self.h.n):
            need = self._need.get(b, 0)
            loop = self.h.has_loop(b)
            doms.append([s for s in range(1, self._full + 1)
                         if s & need == need and bool(self._reach[s] & s) == loop])
        return doms

    def _compatible(self, a: int, sa: int, b: int, sb: int) -> bool:
        return (bool(self._reach[sa] & sb) == self.h.has_edge(a, b)
                and bool(self._reach[sb] & sa) == self.h.has_edge(b, a))

    def _solve(self, chosen: Dict[int, int], doms: Dict[int, List[int]]) -> Iterator[Dict[int, int]]:
        if not doms:
            if not self.full_domain or self._covered(chosen.values()) == self._full:
                yield dict(chosen)
            return
        b = min(doms, key=lambda t: (len(doms[t]), -self.h.degree(t), t))
        rest = {t: d for t, d in doms.items() if t != b}
        for sb in doms[b]:
            self._tick()
            narrowed = {}
            ok = True
            for t, d in rest.items():
                kept = [st for st in d if self._compatible(b, sb, t, st)]
                if not kept:
                    ok = False
                    break
                narrowed[t] = kept
            if not ok:
                continue
            if self.full_domain:
                reachable = self._covered(list(chosen.values()) + [sb])
                for d in narrowed.values():
                    for st in d:
                        reachable |= st
                if reachable != self._full:
                    continue
            chosen[b] = sb
            yield from self._solve(chosen, narrowed)
            del chosen[b]

    @staticmethod
    def _covered(masks: Iterable[int]) -> int:
        acc = 0
        for m in masks:
            acc |= m
        return acc

    def relations(self) -> Iterator[Relation]:
        if self.h.n == 0:
            if self.g.n == 0 or not self.full_domain:
                yield Relation(self.g.n, 0, frozenset())
            return
        doms = self._initial()
        if any(not d for d in doms):
            return
        for chosen in self._solve({}, dict(enumerate(doms))):
            rel = Relation.of(self.g.n, self.h.n,
                              ((x, b) for b, s in chosen.items() for x in range(self.g.n) if s >> x & 1))
            if apply_strong(self.g, rel) == self.h:
                yield rel


def iter_relations(g: Graph, h: Graph, full_domain: bool = False, **kwargs) -> Iterator[Relation]:
    return RelationSearch(g, h, full_domain=full_domain, **kwargs).relations()


def find_relation(g: Graph, h: Graph, full_domain: bool = False, **kwargs) -> Optional[Relation]:
    search = RelationSearch(g, h, full_domain=full_domain, **kwargs)
    found = next(search.relations(), None)
    logger.debug("relation search %d->%d (full_domain=%s): %s after %d nodes",
                 g.n, h.n, full_domain, "found" if found else "none", search.nodes)
    return found


def relation_exists(g: Graph, h: Graph, full_domain: bool = False, **kwargs) -> bool:
    return find_relation(g, h, full_domain, **kwargs) is not None

