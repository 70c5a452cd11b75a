"""Finite posets with integer labels and their set-family embeddings.

Labels double as the auxiliary linear order: a pair ``x <_P y`` is forward
when ``x < y`` numerically and backward otherwise. Forward pairs collect
into the layered family U(x); backward pairs give the sets f(x).
"""
from __future__ import annotations

import logging
import random
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidParameter

logger = logging.getLogger(__name__)

Family = Tuple[FrozenSet[int], ...]


class Poset:
    """Immutable finite partial order on distinct integer labels.

    ``leq[i, j]`` is True iff ``labels[i] <=_P labels[j]``; the matrix is
    read-only and checked for reflexivity, antisymmetry and transitivity.
    """

    def __init__(self, labels: Sequence[int], leq: np.ndarray):
        labels = tuple(int(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise InvalidParameter("poset labels must be distinct")
        leq = np.array(leq, dtype=bool)
        k = len(labels)
        if leq.shape != (k, k):
            raise InvalidParameter(f"order matrix of shape {leq.shape} does not fit {k} labels")
        if not leq.diagonal().all():
            raise InvalidParameter("order is not reflexive")
        off = leq & leq.T & ~np.eye(k, dtype=bool)
        if off.any():
            i, j = map(int, np.argwhere(off)[0])
            raise InvalidParameter(f"order is not antisymmetric on {labels[i]} and {labels[j]}")
        if k and ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) & ~leq).any():
            raise InvalidParameter("order is not transitive")
        leq.flags.writeable = False
        self.labels = labels
        self.leq = leq
        self._index = {x: i for i, x in enumerate(labels)}

    @classmethod
    def from_covers(cls, labels: Sequence[int], covers: Iterable[Tuple[int, int]]) -> "Poset":
        """Reflexive-transitive closure of the pairs ``a <= b`` (given on labels)."""
        labels = list(labels)
        index = {x: i for i, x in enumerate(labels)}
        k = len(labels)
        leq = np.eye(k, dtype=bool)
        for a, b in covers:
            if a not in index or b not in index:
                raise InvalidParameter(f"pair ({a}, {b}) names an unknown label")
            leq[index[a], index[b]] = True
        while True:
            step = leq | ((leq.astype(np.int64) @ leq.astype(np.int64)) > 0)
            if (step == leq).all():
                break
            leq = step
        return cls(labels, leq)

    @classmethod
    def antichain(cls, labels: Sequence[int]) -> "Poset":
        return cls.from_covers(labels, [])

    @classmethod
    def chain(cls, labels: Sequence[int]) -> "Poset":
        """``labels[0] <= labels[1] <= ...``"""
        return cls.from_covers(labels, zip(labels, labels[1:]))

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Poset({list(self.labels)}, covers={self.cover_pairs()})"

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[self._index[a], self._index[b]])

    def strict_pairs(self) -> List[Tuple[int, int]]:
        return [(a, b) for a in self.labels for b in self.labels if a != b and self.le(a, b)]

    @cached_property
    def child(self) -> np.ndarray:
        'child[i, j] iff j covers i'
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        return lt & ~between

    def cover_pairs(self) -> List[Tuple[int, int]]:
        return sorted((self.labels[i], self.labels[j]) for i, j in zip(*np.nonzero(self.child)))

    def down_set(self, x: int) -> FrozenSet[int]:
        j = self._index[x]
        return frozenset(self.labels[i] for i in range(len(self)) if self.leq[i, j])


def downset_embedding(p: Poset) -> Dict[int, FrozenSet[int]]:
    return {x: p.down_set(x) for x in p.labels}


class SplitOrder(NamedTuple):
    forward: FrozenSet[Tuple[int, int]]
    backward: FrozenSet[Tuple[int, int]]


def split_fb(p: Poset) -> SplitOrder:
    """Strict pairs split by label order: forward ``x < y``, backward ``x > y``."""
    pairs = p.strict_pairs()
    return SplitOrder(
        forward=frozenset((a, b) for a, b in pairs if a < b),
        backward=frozenset((a, b) for a, b in pairs if a > b),
    )


def _forward_le(p: Poset, a: int, b: int) -> bool:
    return a == b or (a < b and p.le(a, b))


def _backward_le(p: Poset, a: int, b: int) -> bool:
    return a == b or (a > b and p.le(a, b))


def backward_sets(p: Poset) -> Dict[int, FrozenSet[int]]:
    """f(x) = {y : x <=_b y}."""
    return {x: frozenset(y for y in p.labels if _backward_le(p, x, y)) for x in p.labels}


def layered_embedding(p: Poset) -> Dict[int, Family]:
    """U(x) = {f(y) : y <=_f x}, listed by ascending y."""
    f = backward_sets(p)
    return {x: tuple(f[y] for y in sorted(p.labels) if _forward_le(p, y, x)) for x in p.labels}


def dominates(lower: Iterable[FrozenSet[int]], upper: Iterable[FrozenSet[int]]) -> bool:
    """``lower <=dom upper``: every A in lower contains some B in upper."""
    upper = list(upper)
    return all(any(a >= b for b in upper) for a in lower)


def embedding_mismatches(p: Poset, images: Dict[int, Family]) -> List[Tuple[int, int]]:
    """Ordered label pairs where dominance between images disagrees with the order."""
    return [(a, b) for a in p.labels for b in p.labels if dominates(images[a], images[b]) != p.le(a, b)]


def divides_order(a: Iterable[int], b: Iterable[int]) -> bool:
    """``A <= B`` iff every element of A is divisible by some element of B."""
    b = list(b)
    return all(any(x % y == 0 for y in b) for x in a)


def random_poset(k: int, rng: random.Random, labels: Optional[Sequence[int]] = None, density: float = 0.3) -> Poset:
    """Random order: pairs respecting a shuffled linear extension, kept with probability ``density``."""
    if labels is None:
        labels = rng.sample(range(1, 10 * (k + 1)), k)
    labels = list(labels)
    extension = labels[:]
    rng.shuffle(extension)
    covers = [(extension[i], extension[j]) for i in range(k) for j in range(i + 1, k) if rng.random() < density]
    return Poset.from_covers(labels, covers)


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    d = 2
    while d * d <= x:
        if x % d == 0:
            return False
        d += 1
    return True
