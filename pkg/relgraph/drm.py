"""Degree refinement matrices (coarsest equitable partitions)."""
from dataclasses import dataclass
from typing import Tuple

import networkx as nx
import numpy as np

from .errors import PreconditionError, UnsupportedInput
from .graph import Graph, Partition, disjoint_union
from .refinement import color_classes, refine


@dataclass(frozen=True)
class Drm:
    blocks: Partition
    matrix: Tuple[Tuple[int, ...], ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)


def _check(g: Graph) -> None:
    if g.directed:
        raise UnsupportedInput("degree refinement matrices are computed for undirected graphs")
    if g.n == 0 or not nx.is_connected(g.underlying()):
        raise PreconditionError("degree refinement matrix needs a connected graph")


def count_matrix(g: Graph, blocks: Partition) -> np.ndarray:
    """Entry (i, j) is |N(u) ∩ B_j| for the first vertex u of block i."""
    where = blocks.block_of
    mat = np.zeros((len(blocks), len(blocks)), dtype=np.int64)
    for i, block in enumerate(blocks.blocks):
        u = min(block)
        for w in g.out_nbrs[u]:
            mat[i, where[w]] += 1
    return mat


def is_equitable(g: Graph, blocks: Partition) -> bool:
    where = blocks.block_of
    for block in blocks.blocks:
        rows = {tuple(np.bincount([where[w] for w in g.out_nbrs[u]], minlength=len(blocks))) for u in block}
        if len(rows) > 1:
            return False
    return True


def drm(g: Graph) -> Drm:
    """Refine from the unit partition until stable; blocks come in colour-rank order."""
    _check(g)
    colors = refine(g, [0] * g.n)
    blocks = Partition(tuple(frozenset(c) for c in color_classes(colors)))
    mat = count_matrix(g, blocks)
    return Drm(blocks, tuple(tuple(int(x) for x in row) for row in mat))


def same_drm(g: Graph, h: Graph) -> bool:
    """Equal DRMs, decided by refining the disjoint union jointly."""
    _check(g)
    _check(h)
    colors = refine(disjoint_union(g, h), [0] * (g.n + h.n))
    return set(colors[: g.n]) == set(colors[g.n:])
