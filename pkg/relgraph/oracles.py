"""Brute-force reference answers for small inputs.

Every search in the package has a slow counterpart here that enumerates all
mappings or all relations outright; none of them calls the search engines.
Relations are enumerated as a stack of 0/1 matrices and G * R is read off
``Rᵀ·A·R`` for the whole stack at once. Inputs above ``oracles.max_vertices``
(or relation searches with more than 16 free pairs) are rejected.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .config import setting
from .errors import InvalidParameter
from .graph import Graph, induced_subgraph
from .homomorphisms import HomConstraint, check_hom
from .relations import Relation

logger = logging.getLogger(__name__)

MAX_RELATION_PAIRS = 16


def _guard(*graphs: Graph) -> None:
    limit = setting("oracles", "max_vertices", 5)
    for g in graphs:
        if g.n > limit:
            raise InvalidParameter(f"oracle inputs are limited to {limit} vertices, got {g.n}")


def all_homs(g: Graph, h: Graph, c: HomConstraint = HomConstraint.PLAIN) -> Iterator[Dict[int, int]]:
    _guard(g, h)
    for images in product(range(h.n), repeat=g.n):
        f = dict(enumerate(images))
        if check_hom(f, g, h, c):
            yield f


def brute_hom_exists(g: Graph, h: Graph, c: HomConstraint = HomConstraint.PLAIN) -> bool:
    return next(all_homs(g, h, c), None) is not None


@lru_cache(maxsize=32)
def _relation_stack(src_n: int, dst_n: int, fixed: FrozenSet[Tuple[int, int]] = frozenset()) -> np.ndarray:
    """Every relation containing ``fixed`` as a (2^free, src, dst) stack of 0/1 matrices.

    Row k sets the free cells (row-major order, fixed cells skipped) given by bitmask k.
    """
    free = [(x, b) for x in range(src_n) for b in range(dst_n) if (x, b) not in fixed]
    if len(free) > MAX_RELATION_PAIRS:
        raise InvalidParameter(f"{len(free)} candidate pairs is too many to enumerate")
    count = 1 << len(free)
    stack = np.zeros((count, src_n, dst_n), dtype=np.int8)
    for x, b in fixed:
        if not (0 <= x < src_n and 0 <= b < dst_n):
            raise InvalidParameter(f"required pair ({x}, {b}) is out of range")
        stack[:, x, b] = 1
    if free:
        bits = np.arange(count, dtype=np.int64)[:, None] >> np.arange(len(free), dtype=np.int64) & 1
        rows, cols = zip(*free)
        stack[:, list(rows), list(cols)] = bits
    stack.setflags(write=False)
    return stack


def _as_relation(mat: np.ndarray) -> Relation:
    rows, cols = np.nonzero(mat)
    return Relation(mat.shape[0], mat.shape[1], frozenset(zip(rows.tolist(), cols.tolist())))


def all_relations(src_n: int, dst_n: int) -> Iterator[Relation]:
    for mat in _relation_stack(src_n, dst_n):
        yield _as_relation(mat)


def _solution_mask(g: Graph, h: Graph, full_domain: bool, required: Iterable[Tuple[int, int]]) -> np.ndarray:
    if g.directed != h.directed:
        raise InvalidParameter("relations are between graphs of the same kind")
    stack = _relation_stack(g.n, h.n, frozenset(required))
    ok = stack.any(axis=1).all(axis=1)
    if full_domain:
        ok &= stack.any(axis=2).all(axis=1)
    generated = np.einsum("kxi,xy,kyj->kij", stack, g.adjacency_matrix(), stack) > 0
    ok &= (generated == (h.adjacency_matrix() > 0)).all(axis=(1, 2))
    return ok


def brute_relations(g: Graph, h: Graph, full_domain: bool = False) -> Iterator[Relation]:
    """Every R with full image (and full domain if asked) and g * R = h."""
    stack = _relation_stack(g.n, h.n)
    for k in np.flatnonzero(_solution_mask(g, h, full_domain, ())):
        yield _as_relation(stack[k])


def brute_relation_exists(g: Graph, h: Graph, full_domain: bool = False,
                          required: Iterable[Tuple[int, int]] = ()) -> bool:
    return bool(_solution_mask(g, h, full_domain, required).any())


def minimal_representative(g: Graph, candidates: Sequence[Graph], full_domain: bool) -> Graph:
    """Smallest candidate with fewer vertices related to g and back; g itself if there is none."""
    for x in sorted((c for c in candidates if c.n < g.n), key=lambda c: c.n):
        if brute_relation_exists(g, x, full_domain) and brute_relation_exists(x, g, full_domain):
            return x
    return g


def pr_core(g: Graph, candidates: Sequence[Graph]) -> Graph:
    """Minimum representative under relations with arbitrary domain."""
    return minimal_representative(g, candidates, full_domain=False)


def r_core_oracle(g: Graph, candidates: Sequence[Graph]) -> Graph:
    return minimal_representative(g, candidates, full_domain=True)


def _subsets_by_size(n: int, largest: int) -> Iterator[List[int]]:
    for k in range(1, largest + 1):
        for s in combinations(range(n), k):
            yield list(s)


def graph_core_oracle(g: Graph) -> Graph:
    """Smallest induced subgraph that g maps to."""
    _guard(g)
    for keep in _subsets_by_size(g.n, g.n):
        sub = induced_subgraph(g, keep)
        if brute_hom_exists(g, sub):
            return sub
    return g


def cocore_oracle(g: Graph) -> Graph:
    """Smallest induced subgraph H with a relation H * R = g containing the identity on H."""
    _guard(g)
    for keep in _subsets_by_size(g.n, g.n - 1):
        identity = [(i, v) for i, v in enumerate(keep)]
        if brute_relation_exists(induced_subgraph(g, keep), g, False, required=identity):
            return induced_subgraph(g, keep)
    return g
