"""Binary relations between vertex ranges and the graph operators they induce.

``apply_strong`` is G*R = R⁺ ∘ G ∘ R on a relation with full image,
``apply_weak`` drops the diagonal of that result and ``apply_weighted`` is the
matrix product R⁺ W R.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms import bipartite

from .errors import InvalidParameter, InvariantViolation, PreconditionError
from .graph import Graph, induced_subgraph

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class Relation:
    src_n: int
    dst_n: int
    pairs: FrozenSet[Pair]

    def __post_init__(self):
        for x, b in self.pairs:
            if not (0 <= x < self.src_n and 0 <= b < self.dst_n):
                raise InvalidParameter(f"pair ({x}, {b}) out of range {self.src_n} x {self.dst_n}")

    @classmethod
    def of(cls, src_n: int, dst_n: int, pairs: Iterable[Pair]) -> "Relation":
        return cls(src_n, dst_n, frozenset((int(x), int(b)) for x, b in pairs))

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return cls(n, n, frozenset((x, x) for x in range(n)))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], src_n: int, dst_n: int) -> "Relation":
        return cls.of(src_n, dst_n, mapping.items())

    @cached_property
    def images(self) -> Tuple[FrozenSet[int], ...]:
        out: List[set] = [set() for _ in range(self.src_n)]
        for x, b in self.pairs:
            out[x].add(b)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def preimages(self) -> Tuple[FrozenSet[int], ...]:
        out: List[set] = [set() for _ in range(self.dst_n)]
        for x, b in self.pairs:
            out[b].add(x)
        return tuple(frozenset(s) for s in out)

    def image(self, x: int) -> FrozenSet[int]:
        return self.images[x]

    def image_of(self, s: Iterable[int]) -> FrozenSet[int]:
        out: set = set()
        for x in s:
            out |= self.images[x]
        return frozenset(out)

    def preimage(self, b: int) -> FrozenSet[int]:
        return self.preimages[b]

    @cached_property
    def domain(self) -> FrozenSet[int]:
        return frozenset(x for x, _ in self.pairs)

    @cached_property
    def image_set(self) -> FrozenSet[int]:
        return frozenset(b for _, b in self.pairs)

    def matrix(self) -> np.ndarray:
        mat = np.zeros((self.src_n, self.dst_n), dtype=np.int64)
        for x, b in self.pairs:
            mat[x, b] = 1
        return mat

    def as_mapping(self) -> Optional[Dict[int, int]]:
        """The relation as a total function, or None if it is not one."""
        if any(len(s) != 1 for s in self.images):
            return None
        return {x: next(iter(s)) for x, s in enumerate(self.images)}

    def __len__(self) -> int:
        return len(self.pairs)

    def __le__(self, other: "Relation") -> bool:
        return self.pairs <= other.pairs

    def __lt__(self, other: "Relation") -> bool:
        return self.pairs < other.pairs


class RelationFlags(NamedTuple):
    domain: FrozenSet[int]
    image: FrozenSet[int]
    full_domain: bool
    full_image: bool
    functional: bool
    injective: bool


def predicates(r: Relation) -> RelationFlags:
    return RelationFlags(
        domain=r.domain,
        image=r.image_set,
        full_domain=len(r.domain) == r.src_n,
        full_image=len(r.image_set) == r.dst_n,
        functional=all(len(s) <= 1 for s in r.images),
        injective=all(len(s) <= 1 for s in r.preimages),
    )


def compose(r: Relation, s: Relation) -> Relation:
    """r then s: ``(x, z)`` whenever ``(x, y) ∈ r`` and ``(y, z) ∈ s``."""
    if r.dst_n != s.src_n:
        raise InvalidParameter(f"cannot compose {r.src_n}x{r.dst_n} with {s.src_n}x{s.dst_n}")
    return Relation(r.src_n, s.dst_n, frozenset((x, z) for x, y in r.pairs for z in s.images[y]))


def transpose(r: Relation) -> Relation:
    return Relation(r.dst_n, r.src_n, frozenset((b, x) for x, b in r.pairs))


def generated(g: Graph, r: Relation) -> Graph:
    """R⁺ ∘ G ∘ R without the full-image check."""
    if r.src_n != g.n:
        raise InvalidParameter(f"relation source size {r.src_n} does not match {g.n} vertices")
    pairs = {(a, b) for u, v in g.edges for a in r.images[u] for b in r.images[v]}
    return Graph(g.directed, r.dst_n, frozenset(pairs))


def apply_strong(g: Graph, r: Relation) -> Graph:
    for b, pre in enumerate(r.preimages):
        if not pre:
            raise PreconditionError(f"relation does not cover target vertex {b}", b)
    return generated(g, r)


def apply_weak(g: Graph, r: Relation) -> Graph:
    strong = apply_strong(g, r)
    return Graph(g.directed, strong.n, frozenset((a, b) for a, b in strong.edges if a != b))


def apply_weighted(w: np.ndarray, r: Relation) -> np.ndarray:
    w = np.asarray(w)
    if w.shape != (r.src_n, r.src_n):
        raise InvalidParameter(f"weight matrix of shape {w.shape} does not fit a relation from {r.src_n} vertices")
    mat = r.matrix()
    return mat.T @ w @ mat


@dataclass(frozen=True)
class Decomposition:
    """``r = i_a ∘ r_d ∘ r_c`` with B the pairs of r in lexicographic order."""

    i_a: Relation
    r_d: Relation
    r_c: Relation
    domain: Tuple[int, ...]

    def factor_graph(self, g: Graph) -> Graph:
        """G[dom R] * R_D * R_C, which equals G * R."""
        index = {x: i for i, x in enumerate(self.domain)}
        restricted = Relation.of(len(self.domain), self.r_d.dst_n, ((index[x], k) for x, k in self.r_d.pairs))
        return apply_strong(apply_strong(induced_subgraph(g, self.domain), restricted), self.r_c)


def decompose(r: Relation) -> Decomposition:
    ordered = sorted(r.pairs)
    i_a = Relation(r.src_n, r.src_n, frozenset((x, x) for x in r.domain))
    r_d = Relation(r.src_n, len(ordered), frozenset((x, k) for k, (x, _) in enumerate(ordered)))
    r_c = Relation(len(ordered), r.dst_n, frozenset((k, b) for k, (_, b) in enumerate(ordered)))
    return Decomposition(i_a, r_d, r_c, tuple(sorted(r.domain)))


@dataclass(frozen=True)
class HallResult:
    satisfied: bool
    matching: Optional[Dict[int, int]] = None
    witness: Optional[FrozenSet[int]] = None


def hall_check(r: Relation) -> HallResult:
    """Hall's condition on dom r via maximum bipartite matching.

    On failure the witness is the set of sources reachable by alternating
    paths from an unmatched source; it satisfies ``|S| > |R(S)|``.
    """
    sources = sorted(r.domain)
    if not sources:
        return HallResult(True, {}, None)
    bg = nx.Graph()
    left = [("s", x) for x in sources]
    bg.add_nodes_from(left, bipartite=0)
    bg.add_nodes_from((("t", b) for b in sorted(r.image_set)), bipartite=1)
    bg.add_edges_from((("s", x), ("t", b)) for x, b in r.pairs)
    matching = bipartite.hopcroft_karp_matching(bg, top_nodes=left)
    matched = {x: matching[("s", x)][1] for x in sources if ("s", x) in matching}
    if len(matched) == len(sources):
        return HallResult(True, matched, None)

    matched_by = {b: x for x, b in matched.items()}
    reached = {x for x in sources if x not in matched}
    frontier = list(reached)
    while frontier:
        x = frontier.pop()
        for b in r.images[x]:
            y = matched_by.get(b)
            if y is not None and y not in reached:
                reached.add(y)
                frontier.append(y)
    witness = frozenset(reached)
    logger.debug("Hall condition fails on %s (image size %d)", sorted(witness), len(r.image_of(witness)))
    return HallResult(False, None, witness)


def _is_graph_hom(f: Mapping[int, int], g: Graph, h: Graph) -> bool:
    return all((f[u], f[v]) in h.edges for u, v in g.edges)


def extract_monomorphism(g: Graph, r: Relation, h: Graph) -> Optional[Dict[int, int]]:
    """A monomorphism g -> h contained in r, when Hall's condition holds."""
    if apply_strong(g, r) != h:
        raise PreconditionError("relation does not satisfy g * r = h")
    if len(r.domain) != g.n:
        return None
    result = hall_check(r)
    if not result.satisfied:
        return None
    f = result.matching
    if not _is_graph_hom(f, g, h):
        raise InvariantViolation("a matching inside a solution of g * r = h must be a homomorphism")
    return f


def is_reversible(g: Graph, r: Relation) -> bool:
    """Whether (g * r) * r⁺ = g.

    Decided twice, by the neighbourhood criterion (related sources sharing a
    target have equal neighbourhoods, and r has full domain) and by direct
    computation; the two must agree.
    """
    flags = predicates(r)
    criterion = flags.full_domain and all(
        g.out_nbrs[x] == g.out_nbrs[y] and g.in_nbrs[x] == g.in_nbrs[y]
        for pre in r.preimages
        for x in pre
        for y in pre
        if x < y
    )
    forward = apply_strong(g, r)
    back = transpose(r)
    direct = flags.full_domain and apply_strong(forward, back) == g
    if criterion != direct:
        raise InvariantViolation(f"reversibility criterion {criterion} disagrees with direct check {direct}")
    return direct
