from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from .graph import Graph


class GraphPayload(BaseModel):
    directed: bool = False
    n: int
    edges: List[Tuple[int, int]]  # undirected edges once, loops as (v, v)
    name: Optional[str] = None

    @classmethod
    def from_graph(cls, g: Graph, name: Optional[str] = None) -> "GraphPayload":
        return cls(directed=g.directed, n=g.n, edges=g.sorted_edges(), name=name)

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges, directed=self.directed)

    def render(self) -> str:
        label = f"{self.name} " if self.name else ""
        edges = " ".join(f"{u}-{v}" for u, v in self.edges) or "-"
        return f"{label}{'digraph' if self.directed else 'graph'}({self.n}) {edges}"


class HomResult(BaseModel):
    constraint: str
    found: bool
    witness: Optional[Dict[int, int]] = None

    def render(self) -> str:
        if not self.found:
            return "NONE"
        return "\n".join(f"{v} {b}" for v, b in sorted(self.witness.items()))


class EmbeddingMismatch(BaseModel):
    lower: int
    upper: int
    expected: bool
    observed: bool


class EmbeddingReport(BaseModel):
    comparator: str
    elements: List[int]
    cells: int
    mismatches: List[EmbeddingMismatch] = []
    exhausted: List[Tuple[int, int]] = []

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.exhausted

    def render(self) -> str:
        lines = [f"comparator {self.comparator} elements {len(self.elements)} cells {self.cells}"]
        lines += [f"mismatch {m.lower} {m.upper} expected {int(m.expected)} observed {int(m.observed)}"
                  for m in sorted(self.mismatches, key=lambda m: (m.lower, m.upper))]
        lines += [f"exhausted {a} {b}" for a, b in sorted(self.exhausted)]
        lines.append("verified" if self.ok else "FAILED")
        return "\n".join(lines)


class GapPair(BaseModel):
    lower: GraphPayload
    upper: GraphPayload
    universe_relative: bool = True


class GapReport(BaseModel):
    comparator: str
    universe: str
    classes: int
    gaps: List[GapPair] = []

    def render(self) -> str:
        lines = [f"comparator {self.comparator} universe {self.universe} classes {self.classes} gaps {len(self.gaps)}"]
        lines += [f"gap {p.lower.render()} < {p.upper.render()} (universe-relative)" for p in self.gaps]
        return "\n".join(lines)


class DualityReport(BaseModel):
    comparator: str
    universe: str
    f_side: List[GraphPayload]
    d_side: List[GraphPayload]
    checked: int
    violations: List[GraphPayload] = []

    @property
    def holds(self) -> bool:
        return not self.violations

    def render(self) -> str:
        lines = [f"comparator {self.comparator} universe {self.universe} checked {self.checked}"]
        lines += [f"F {g.render()}" for g in self.f_side]
        lines += [f"D {g.render()}" for g in self.d_side]
        lines += [f"violation {g.render()}" for g in self.violations]
        lines.append("holds" if self.holds else "FAILED")
        return "\n".join(lines)


class PrCoreReport(BaseModel):
    checked: int
    mismatches: List[GraphPayload] = []
    antichain: List[Tuple[int, int, bool]] = []  # (n, m, relation from complement of C_n to complement of C_m)

    @property
    def ok(self) -> bool:
        return not self.mismatches and all(found == (n == m) for n, m, found in self.antichain)

    def render(self) -> str:
        lines = [f"pr-core checked {self.checked} mismatches {len(self.mismatches)}"]
        lines += [f"mismatch {g.render()}" for g in self.mismatches]
        lines += [f"complement C{n} -> complement C{m}: {'yes' if found else 'no'}" for n, m, found in self.antichain]
        lines.append("verified" if self.ok else "FAILED")
        return "\n".join(lines)


class PropsReport(BaseModel):
    point_determining: bool
    property_n: bool
    property_nstar: bool
    cocore: bool
    r_core: bool
    core: bool

    def render(self) -> str:
        return "\n".join(f"{k} {int(v)}" for k, v in self.model_dump().items())
