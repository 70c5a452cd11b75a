"""Colour refinement with labelling-independent colour numbers.

Colours are ranks of sorted signatures, so two isomorphic graphs receive the
same colours on corresponding vertices; the canonical DRM block order and the
enumeration certificates both rely on that.
"""
from collections import Counter
from typing import List, Optional, Sequence, Tuple

from .graph import Graph


def _rank(signatures: Sequence[tuple]) -> List[int]:
    order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [order[sig] for sig in signatures]


def refine(g: Graph, initial: Optional[Sequence[int]] = None) -> List[int]:
    """Stable colouring of g refined from ``initial`` (default: loop flag)."""
    if initial is None:
        initial = [1 if g.has_loop(v) else 0 for v in range(g.n)]
    colors = _rank([(c,) for c in initial])
    while True:
        sigs: List[Tuple] = []
        for v in range(g.n):
            out = tuple(sorted(Counter(colors[u] for u in g.out_nbrs[v]).items()))
            if g.directed:
                inn = tuple(sorted(Counter(colors[u] for u in g.in_nbrs[v]).items()))
                sigs.append((colors[v], out, inn))
            else:
                sigs.append((colors[v], out))
        refined = _rank(sigs)
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def color_classes(colors: Sequence[int]) -> List[List[int]]:
    classes: List[List[int]] = [[] for _ in range(max(colors, default=-1) + 1)]
    for v, c in enumerate(colors):
        classes[c].append(v)
    return classes
